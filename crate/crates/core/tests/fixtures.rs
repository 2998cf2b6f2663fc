use std::fs;
use std::path::PathBuf;

use proxtree_core::io::{emit_drawing, parse_drawing, parse_instance, FormatError};
use proxtree_core::verify::verify_drawing;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn read(name: &str) -> Vec<u8> {
    fs::read(dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn six_star_fixture_parses_and_validates() {
    let inst = parse_instance(&read("six-star.json")).unwrap();
    inst.validate().unwrap();
    assert_eq!(inst.tree.vertex_count(), 7);
    assert_eq!(inst.tree.max_degree(), 6);
    assert_eq!(inst.decomposition.unwrap().parts.len(), 3);
}

#[test]
fn instances_validate() {
    for name in ["six-star.json", "outdeg3-partition.json", "two-covering.json", "degree5-partition.json"] {
        parse_instance(&read(name)).unwrap().validate().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn drawings_verify_and_round_trip() {
    for stem in ["outdeg3-partition", "two-covering", "degree5-partition"] {
        let bytes = read(&format!("{stem}.drawing.json"));
        let d = parse_drawing(&bytes).unwrap();
        assert!(verify_drawing(&d).passed(), "{stem}");
        assert_eq!(emit_drawing(&d), bytes, "{stem}");
        let inst = parse_instance(&read(&format!("{stem}.json"))).unwrap();
        assert_eq!(d.instance(), &inst, "{stem}");
    }
}

#[test]
fn invalid_fixtures_are_rejected_where_expected() {
    let err = |name: &str| parse_instance(&read(&format!("invalid/{name}.json")));
    assert!(matches!(err("outdegree-without-root"), Err(FormatError::Invalid { path, .. }) if path == "root"));
    assert!(matches!(err("unknown-field"), Err(FormatError::Json { line: 4, .. })));
    assert!(matches!(err("unknown-endpoint"), Err(FormatError::Invalid { path, .. }) if path == "edges[0][1]"));
    // well-formed but violating its own bound: caught by validation
    let inst = err("bound-exceeded").unwrap();
    assert!(inst.validate().is_err());
}
