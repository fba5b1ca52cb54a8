import pytest

from ecokg import checks, ecotox, units
from ecokg.graph import Triple, TripleStore, blank, iri, literal
from ecokg.ns import ET, RDF_VALUE, RDFS_SUBCLASSOF, UNIT_UNITS, XSD_DECIMAL, default_prefix_map
from ecokg.ntriples import serialize


@pytest.fixture(scope="module")
def tables(fixtures):
    base = fixtures / "ecotox"
    return {
        "species": (base / "species.txt").read_text(),
        "chemicals": (base / "chemicals.txt").read_text(),
        "tests": (base / "tests.txt").read_text(),
        "results": (base / "results.txt").read_text(),
    }


@pytest.fixture(scope="module")
def species_records(tables):
    return [ecotox.synthesize_lineage(r) for r in ecotox.parse_species(tables["species"])]


@pytest.fixture(scope="module")
def effect_store(tables, species_records, fixtures, prefixes):
    registry, _ = units.load_registry((fixtures / "units.tsv").read_text(), prefixes)
    store = TripleStore(default_prefix_map())
    ecotox.ingest_species(species_records, store)
    ecotox.ingest_chemicals(ecotox.parse_chemicals(tables["chemicals"]), store)
    ecotox.ingest_tests(
        ecotox.parse_tests(tables["tests"]),
        ecotox.parse_results(tables["results"]),
        store,
        registry,
    )
    return store


class TestTableReader:
    def test_header_and_rows(self):
        header, rows = ecotox.read_table("a|b\n1|2\n3|4\n")
        assert header == ["a", "b"]
        assert rows == [{"a": "1", "b": "2"}, {"a": "3", "b": "4"}]

    def test_column_count_enforced(self):
        with pytest.raises(ValueError, match="line 3"):
            ecotox.read_table("a|b\n1|2\nonly-one\n")

    def test_empty_table(self):
        with pytest.raises(ValueError):
            ecotox.read_table("\n\n")


class TestNameCleaning:
    @pytest.mark.parametrize(
        "raw,expected",
        [
            ("Daphnia sp.", "Daphnia"),
            ("Danio rerio", "Danio rerio"),
            ("Lemna var. minor", "Lemna minor"),
            ("Genus ssp. x spp.", "Genus x"),
            ("  spaced   out  ", "spaced out"),
        ],
    )
    def test_cleaning(self, raw, expected):
        assert ecotox.clean_species_name(raw) == expected

    @pytest.mark.parametrize("raw", ["", "--", "NA", "NR", "/", "  NR  ", "sp."])
    def test_missing_shorthands(self, raw):
        assert ecotox.clean_species_name(raw) is None

    def test_sanitize_name(self):
        assert ecotox.sanitize_name("Daphniidae genus") == "daphniidae_genus"
        assert ecotox.sanitize_name("O'Brien's worm") == "obriens_worm"
        assert ecotox.sanitize_name("  Daphnia  ") == "daphnia"


class TestLineageSynthesis:
    def make(self, **levels):
        order = ["family", "genus", "species"]
        lineage = tuple((lvl, levels.get(lvl, "")) for lvl in order)
        return ecotox.SpeciesRecord("1", None, None, None, lineage)

    def test_gap_filled_from_nearest_ancestor(self):
        rec = self.make(family="Daphniidae", species="magna")
        names = [name for _, name in ecotox.synthesize_lineage(rec).lineage]
        assert names == ["Daphniidae", "Daphniidae genus", "magna"]

    def test_consecutive_gaps_chain(self):
        rec = self.make(family="Daphniidae")
        names = [name for _, name in ecotox.synthesize_lineage(rec).lineage]
        assert names == ["Daphniidae", "Daphniidae genus", "Daphniidae genus species"]

    def test_fully_filled_unchanged(self):
        rec = self.make(family="Daphniidae", genus="Daphnia", species="magna")
        assert ecotox.synthesize_lineage(rec) == rec

    def test_levels_above_highest_filled_stay_empty(self):
        rec = self.make(genus="Daphnia", species="magna")
        names = [name for _, name in ecotox.synthesize_lineage(rec).lineage]
        assert names == ["", "Daphnia", "magna"]

    def test_all_empty_rejected(self):
        with pytest.raises(ecotox.EmptyLineageError):
            ecotox.synthesize_lineage(self.make())

    def test_uniform_length_on_fixture(self, species_records):
        lengths = {len(r.lineage) for r in species_records}
        assert len(lengths) == 1


class TestSpeciesParsing:
    def test_levels_come_from_header(self, species_records):
        levels = [lvl for lvl, _ in species_records[0].lineage]
        assert levels == [
            "kingdom", "phylum_division", "class", "tax_order", "family", "genus", "species",
        ]

    def test_placeholder_and_missing_cleaned(self, species_records):
        by_number = {r.number: r for r in species_records}
        assert by_number["8888"].latin_name == "Daphnia"
        assert by_number["7777"].common_name is None

    def test_bad_species_number(self):
        with pytest.raises(ValueError):
            ecotox.parse_species(
                "species_number|common_name|latin_name|genus|species|ecotox_group\n"
                "12x|a|b|c|d|e\n"
            )


class TestSpeciesIngest:
    def test_leaf_under_name_node(self, effect_store):
        assert (
            "<https://cfpub.epa.gov/ecotox/taxon/34010> "
            "<http://www.w3.org/2000/01/rdf-schema#subClassOf> "
            "<https://cfpub.epa.gov/ecotox/taxon/hirta> ."
        ) in serialize(effect_store)

    def test_chain_reaches_lineage_root(self, effect_store, species_records):
        root = iri(ET + "taxon/animalia")
        for rec in species_records:
            node = ecotox.species_iri(rec.number)
            seen = set()
            while True:
                parents = effect_store.objects(node, RDFS_SUBCLASSOF)
                if not parents:
                    break
                assert len(parents) == 1, f"multiple parents for {node.value}"
                node = parents.pop()
                assert node not in seen
                seen.add(node)
            assert node == root

    def test_rank_triples_use_level_names(self, effect_store):
        assert effect_store.match(
            iri(ET + "taxon/daphnia"), ecotox.RANK_PROP, iri(ET + "Genus")
        )
        assert effect_store.match(
            iri(ET + "taxon/animalia"), ecotox.RANK_PROP, iri(ET + "Kingdom")
        )

    def test_synthesized_node_present(self, effect_store):
        node = iri(ET + "taxon/daphniidae_genus")
        assert effect_store.match(node, RDFS_SUBCLASSOF, iri(ET + "taxon/daphniidae"))

    def test_leaf_gets_type_names_and_group(self, effect_store):
        leaf = ecotox.species_iri("5156")
        assert effect_store.match(leaf, None, ecotox.TAXON_TYPE)
        assert effect_store.match(leaf, ecotox.COMMON_NAME_PROP, literal("Zebra Danio"))
        assert effect_store.match(leaf, ecotox.LATIN_NAME_PROP, literal("Danio rerio"))
        assert effect_store.match(leaf, ecotox.GROUP_PROP, ecotox.group_iri("Fish"))

    def test_group_disjointness_symmetric(self, effect_store):
        worms, fish = ecotox.group_iri("Worms"), ecotox.group_iri("Fish")
        disjoint = iri("http://www.w3.org/2002/07/owl#disjointWith")
        assert effect_store.match(worms, disjoint, fish)
        assert effect_store.match(fish, disjoint, worms)

    def test_reingest_adds_nothing(self, species_records, effect_store):
        store = TripleStore()
        ecotox.ingest_species(species_records, store)
        assert ecotox.ingest_species(species_records, store) == 0

    def test_unresolved_parent(self):
        rec = ecotox.SpeciesRecord("9", None, "x", None, (("genus", ""), ("species", "")))
        with pytest.raises(ecotox.UnresolvedParentError):
            ecotox.ingest_species([rec], TripleStore())


class TestChemicalIngest:
    def test_subject_drops_hyphens_and_labels(self, effect_store):
        subject = ecotox.chemical_iri("877-43-0")
        assert subject.value == "https://cfpub.epa.gov/ecotox/chemical/877430"
        assert effect_store.match(
            subject, iri("http://www.w3.org/2000/01/rdf-schema#label"),
            literal("2,6-Dimethylquinoline"),
        )
        assert effect_store.match(subject, None, ecotox.CHEMICAL_TYPE)

    def test_invalid_cas_kept_but_flagged(self):
        records = ecotox.parse_chemicals(
            "cas_number|chemical_name|ecotox_group\n877-43-1|bad checksum|X\n"
        )
        assert records[0].cas_valid is False
        store = TripleStore()
        ecotox.ingest_chemicals(records, store)
        assert store.match(ecotox.chemical_iri("877-43-1"))

    def test_empty_name_gets_no_label(self):
        records = ecotox.parse_chemicals("cas_number|chemical_name\n50-00-0|--\n")
        store = TripleStore()
        ecotox.ingest_chemicals(records, store)
        assert not store.match(None, iri("http://www.w3.org/2000/01/rdf-schema#label"), None)

    def test_distinct_subject_count(self, effect_store, tables):
        records = ecotox.parse_chemicals(tables["chemicals"])
        subjects = effect_store.subjects(
            iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"), ecotox.CHEMICAL_TYPE
        )
        assert len(subjects) == len(records) == 3


class TestTestIngest:
    def test_expected_test_triples(self, effect_store):
        text = serialize(effect_store)
        for line in [
            "<https://cfpub.epa.gov/ecotox/test/001> "
            "<https://cfpub.epa.gov/ecotox/compound> "
            "<https://cfpub.epa.gov/ecotox/chemical/115866> .",
            "<https://cfpub.epa.gov/ecotox/test/001> "
            "<https://cfpub.epa.gov/ecotox/species> "
            "<https://cfpub.epa.gov/ecotox/taxon/26812> .",
            "<https://cfpub.epa.gov/ecotox/test/001> "
            "<https://cfpub.epa.gov/ecotox/organsimLifestage> "
            "<https://cfpub.epa.gov/ecotox/lifestage/adult> .",
        ]:
            assert line in text

    def test_each_test_has_one_compound_and_species(self, effect_store):
        tests = effect_store.subjects(
            iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"), ecotox.TEST_TYPE
        )
        assert len(tests) == 3
        for t in tests:
            assert len(effect_store.objects(t, ecotox.COMPOUND_PROP)) == 1
            assert len(effect_store.objects(t, ecotox.SPECIES_PROP)) == 1

    def test_each_result_reachable_from_one_test(self, effect_store):
        results = effect_store.subjects(
            iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"), ecotox.RESULT_TYPE
        )
        assert len(results) == 6
        for r in results:
            assert len(effect_store.subjects(ecotox.HAS_RESULT_PROP, r)) == 1

    def test_has_result_count_per_test(self, effect_store):
        assert len(effect_store.objects(ecotox.test_iri("001"), ecotox.HAS_RESULT_PROP)) == 3

    def test_endpoint_code_uppercased_trailing_punctuation_dropped(self):
        assert ecotox.code_iri("LC50/").value == ET + "LC50"
        assert ecotox.code_iri("lc50").value == ET + "LC50"
        assert ecotox.code_iri("EC50*/").value == ET + "EC50"

    def test_plain_concentration_typed_decimal(self, effect_store):
        node = blank("conc_55501")
        assert effect_store.match(node, RDF_VALUE, literal("12.5", XSD_DECIMAL))
        assert effect_store.match(node, UNIT_UNITS, iri(ET + "MilligramPerLiter"))
        assert not effect_store.match(node, ecotox.QUALIFIER_PROP, None)

    def test_qualified_concentration_kept_raw(self, effect_store):
        node = blank("conc_55504")
        assert effect_store.match(node, RDF_VALUE, literal("100"))
        assert effect_store.match(node, ecotox.QUALIFIER_PROP, literal(">"))

    def test_unparsable_concentration_flagged(self):
        rec = ecotox.ResultRecord("9", "1", "LC50", "ca. 5-10", "mg/L", None)
        triples = ecotox._concentration_triples(rec, None)
        objects = {(t.predicate, t.object) for t in triples}
        assert (RDF_VALUE, literal("ca. 5-10")) in objects
        assert (ecotox.QUALIFIER_PROP, literal("unparsed")) in objects

    def test_unit_without_registry_stays_literal(self):
        rec = ecotox.ResultRecord("9", "1", "LC50", "4", "mg/L", None)
        triples = ecotox._concentration_triples(rec, None)
        assert any(t.object == literal("mg/L") for t in triples)

    def test_orphan_result_rejected_before_emission(self, tables):
        tests = ecotox.parse_tests(tables["tests"])
        results = ecotox.parse_results(tables["results"])
        results.append(ecotox.ResultRecord("1", "999999", "LC50", "1", "mg/L", None))
        store = TripleStore()
        with pytest.raises(ecotox.OrphanResultError) as err:
            ecotox.ingest_tests(tests, results, store)
        assert err.value.missing == ["999999"]
        assert len(store) == 0

    def test_zero_result_test_emits_metadata_only(self):
        tests = [ecotox.TestRecord("5", "50-00-0", "7")]
        store = TripleStore()
        ecotox.ingest_tests(tests, [], store)
        assert len(store) == 3

    def test_cross_table_validation(self, tables, species_records):
        tests = ecotox.parse_tests(tables["tests"])
        chemicals = ecotox.parse_chemicals(tables["chemicals"])
        ecotox.validate_test_references(tests, species_records, chemicals)
        bad = tests + [ecotox.TestRecord("77", "50-00-0", "404")]
        with pytest.raises(ecotox.UnknownReferenceError) as err:
            ecotox.validate_test_references(bad, species_records, chemicals)
        assert err.value.missing == ["cas:50-00-0", "species:404"]


class TestConsistencyScans:
    def test_clean_fixture_has_no_violations(self, effect_store):
        assert checks.subclass_cycles(effect_store) == []
        assert checks.disjointness_violations(effect_store, ecotox.GROUP_PROP) == []

    def test_planted_cycle_found(self):
        store = TripleStore()
        a, b, c = (iri(f"http://x.org/{n}") for n in "abc")
        store.add_all(
            [
                Triple(a, RDFS_SUBCLASSOF, b),
                Triple(b, RDFS_SUBCLASSOF, c),
                Triple(c, RDFS_SUBCLASSOF, a),
            ]
        )
        cycles = checks.subclass_cycles(store)
        assert len(cycles) == 1
        assert set(cycles[0]) == {a, b, c}

    def test_planted_disjointness_violation_found(self):
        store = TripleStore()
        entity = iri("http://x.org/e")
        g1, g2 = ecotox.group_iri("Fish"), ecotox.group_iri("Worms")
        store.add(Triple(g1, iri("http://www.w3.org/2002/07/owl#disjointWith"), g2))
        store.add(Triple(entity, ecotox.GROUP_PROP, g1))
        store.add(Triple(entity, ecotox.GROUP_PROP, g2))
        assert checks.disjointness_violations(store, ecotox.GROUP_PROP) == [(entity, g1, g2)]
