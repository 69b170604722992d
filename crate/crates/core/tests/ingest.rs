//! Ingestion of the checked-in fixture files.

use gia_core::groups::GroupElement;
use gia_core::text::{parse_cayley_file, parse_cocycle_file};
use gia_core::twisted::{center_dimension, TwistedGroupAlgebra};

fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn s3_table_loads_and_behaves() {
    let g = parse_cayley_file(&fixture("s3.cay")).unwrap();
    assert_eq!(g.order(), 6);
    assert!(!g.is_commutative());
    // The fixture lists permutations lexicographically: index 1 is the
    // transposition (0 2 1), index 3 the 3-cycle (1 2 0).  A
    // transposition composed with itself is the identity, read off the
    // ingested table.
    let id = g.identity();
    let t = GroupElement::Table(1);
    assert_eq!(g.op(&t, &t).unwrap(), id);
    assert_eq!(g.inv(&t).unwrap(), t);
    let c = GroupElement::Table(3);
    assert_ne!(g.op(&c, &c).unwrap(), id);
    // Group algebra of S_3 has a 3-dimensional center (one dimension per
    // conjugacy class).
    let alg = TwistedGroupAlgebra::group_algebra(g, 6).unwrap();
    assert_eq!(center_dimension(&alg).unwrap(), 3);
}

#[test]
fn pauli_cocycle_loads() {
    let c = parse_cocycle_file(&fixture("pauli.coc")).unwrap();
    assert!(c.is_cocycle());
    let beta = c.bicharacter().unwrap();
    assert!(beta.is_nondegenerate());
}

#[test]
fn fuzz_corpus_seeds_are_valid() {
    // Every checked-in corpus seed must exercise the happy path of its
    // parser, mirroring what the fuzz targets assert.
    let base = format!("{}/../../fuzz/corpus", env!("CARGO_MANIFEST_DIR"));
    let read_all = |dir: &str| -> Vec<String> {
        let mut out = Vec::new();
        for entry in std::fs::read_dir(format!("{base}/{dir}")).unwrap() {
            out.push(std::fs::read_to_string(entry.unwrap().path()).unwrap());
        }
        assert!(!out.is_empty(), "{dir} has no seeds");
        out
    };
    for s in read_all("group_literal") {
        gia_core::text::parse_group_literal(&s).unwrap();
    }
    for s in read_all("scalar_expr") {
        gia_core::text::parse_scalar(&s).unwrap();
    }
    for s in read_all("element_words") {
        let (lit, words) = s.split_once('\n').unwrap();
        let g = gia_core::text::parse_group_literal(lit).unwrap();
        gia_core::text::parse_element_list(words, &g).unwrap();
    }
    for s in read_all("cayley_file") {
        parse_cayley_file(&s).unwrap();
    }
    for s in read_all("cocycle_file") {
        parse_cocycle_file(&s).unwrap();
    }
    for s in read_all("ut_matrix_file") {
        gia_core::text::parse_ut_matrix_file(&s).unwrap();
    }
    for s in read_all("psi_action_file") {
        gia_core::text::parse_psi_action_file(&s).unwrap();
    }
    for s in read_all("matrix_spec") {
        gia_core::text::parse_matrix_spec(&s).unwrap();
    }
}

#[test]
fn order16_library_is_sane() {
    let dir = format!("{}/../../groups/order16", env!("CARGO_MANIFEST_DIR"));
    let mut names = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let body = std::fs::read_to_string(&path).unwrap();
        let g = parse_cayley_file(&body).unwrap();
        assert_eq!(g.order(), 16, "{}", path.display());
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        if name != "z16" {
            assert!(!g.is_commutative(), "{name} should be non-abelian");
        }
        names.push(name);
    }
    names.sort();
    assert_eq!(names.len(), 10);
    assert!(names.contains(&"q16".to_string()));
}
