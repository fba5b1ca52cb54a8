"""Namespace constants and the default prefix map."""

from .graph import PrefixMap, Term, iri

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
XSD = "http://www.w3.org/2001/XMLSchema#"
FOAF = "http://xmlns.com/foaf/0.1/"

ET = "https://cfpub.epa.gov/ecotox/"
NCBI = "https://www.ncbi.nlm.nih.gov/taxonomy/"
EOL = "http://eol.org/schema/terms/"
WD = "http://www.wikidata.org/entity/"
WDT = "http://www.wikidata.org/prop/direct/"
QUDT = "http://qudt.org/schema/qudt#"
UNIT = "http://qudt.org/1.1/vocab/unit#"
ENVO = "http://purl.obolibrary.org/obo/ENVO_"
WORMS = "http://marineregions.org/mrgid/"

RDF_TYPE: Term = iri(RDF + "type")
RDF_VALUE: Term = iri(RDF + "value")
RDFS_LABEL: Term = iri(RDFS + "label")
RDFS_SUBCLASSOF: Term = iri(RDFS + "subClassOf")
OWL_SAMEAS: Term = iri(OWL + "sameAs")
OWL_DISJOINTWITH: Term = iri(OWL + "disjointWith")
XSD_DECIMAL = XSD + "decimal"
XSD_STRING = XSD + "string"
UNIT_UNITS: Term = iri(UNIT + "units")

DEFAULT_PREFIXES: dict[str, str] = {
    "rdf": RDF,
    "rdfs": RDFS,
    "owl": OWL,
    "xsd": XSD,
    "foaf": FOAF,
    "et": ET,
    "ncbi": NCBI,
    "eol": EOL,
    "wd": WD,
    "wdt": WDT,
    "qudt": QUDT,
    "unit": UNIT,
    "ENVO": ENVO,
    "worms": WORMS,
}


def default_prefix_map() -> PrefixMap:
    return PrefixMap(DEFAULT_PREFIXES)
