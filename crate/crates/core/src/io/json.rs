use std::collections::HashMap;

use indexmap::IndexMap;
use rug::Float;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::FormatError;
use crate::construct::{Drawing, DrawingMeta};
use crate::geometry::Point;
use crate::tree::{BoundMode, Decomposition, DecompositionKind, DegreeBound, EdgeId, Instance, Part, Tree, VertexId};
use crate::MIN_PRECISION;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    root: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    decomposition: Option<DecompositionFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionFile {
    kind: DecompositionKind,
    mode: BoundMode,
    bound: usize,
    parts: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DrawingFile {
    /// Inline instance object, or a path to an instance file.
    instance: serde_json::Value,
    coordinates: IndexMap<String, (String, String)>,
    metadata: MetadataFile,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetadataFile {
    precision_bits: u32,
    construction: String,
    seed: Option<u64>,
}

fn from_json<T: DeserializeOwned>(bytes: &[u8], prefix: &str) -> Result<T, FormatError> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| json_error(e, prefix))?;
    de.end().map_err(|e| FormatError::Json {
        path: prefix.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(value)
}

fn json_error(e: serde_path_to_error::Error<serde_json::Error>, prefix: &str) -> FormatError {
    let path = join(prefix, &e.path().to_string());
    let inner = e.into_inner();
    FormatError::Json { path, line: inner.line(), column: inner.column(), message: strip_position(&inner.to_string()) }
}

fn join(prefix: &str, path: &str) -> String {
    match (prefix.is_empty(), path == ".") {
        (_, true) => prefix.to_string(),
        (true, false) => path.to_string(),
        (false, false) => format!("{prefix}.{path}"),
    }
}

/// serde_json appends " at line L column C"; the position is kept separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Invalid { path: path.into(), message: message.into() }
}

/// Parses an instance file. Structure and references are checked here;
/// whether the decomposition meets its bound is left to
/// [`Instance::validate`].
pub fn parse_instance(bytes: &[u8]) -> Result<Instance, FormatError> {
    let file: InstanceFile = from_json(bytes, "")?;
    instance_from_file(file, "")
}

fn instance_from_file(file: InstanceFile, prefix: &str) -> Result<Instance, FormatError> {
    let at = |p: &str| join(prefix, p);
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, name) in file.vertices.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(invalid(at(&format!("vertices[{i}]")), format!("duplicate vertex `{name}`")));
        }
    }
    for (i, (a, b)) in file.edges.iter().enumerate() {
        for (j, end) in [a, b].into_iter().enumerate() {
            if !index.contains_key(end.as_str()) {
                return Err(invalid(at(&format!("edges[{i}][{j}]")), format!("unknown vertex `{end}`")));
            }
        }
    }
    let tree = Tree::new(&file.vertices, file.edges.iter().map(|(a, b)| (a, b)))
        .map_err(|e| invalid(at("edges"), e.to_string()))?;
    let root = match &file.root {
        Some(name) => Some(VertexId(
            *index.get(name.as_str()).ok_or_else(|| invalid(at("root"), format!("unknown vertex `{name}`")))?,
        )),
        None => None,
    };
    let (decomposition, bound) = match file.decomposition {
        None => (None, None),
        Some(dec) => {
            if dec.mode == BoundMode::Outdegree && root.is_none() {
                return Err(invalid(at("root"), "required when decomposition.mode is \"outdegree\""));
            }
            let m = tree.edge_count();
            let mut parts = Vec::with_capacity(dec.parts.len());
            for (i, part) in dec.parts.iter().enumerate() {
                let mut seen = vec![false; m];
                for (j, &e) in part.iter().enumerate() {
                    let path = || at(&format!("decomposition.parts[{i}][{j}]"));
                    if e >= m {
                        return Err(invalid(path(), format!("edge index {e} out of range ({m} edges)")));
                    }
                    if std::mem::replace(&mut seen[e], true) {
                        return Err(invalid(path(), format!("edge index {e} repeated")));
                    }
                }
                parts.push(Part::new(part.iter().map(|&e| EdgeId(e))));
            }
            let decomposition = Decomposition { kind: dec.kind, parts };
            (Some(decomposition), Some(DegreeBound { bound: dec.bound, mode: dec.mode }))
        }
    };
    Ok(Instance { tree, root, decomposition, bound })
}

fn instance_to_file(inst: &Instance) -> InstanceFile {
    let t = &inst.tree;
    let decomposition = inst.decomposition.as_ref().map(|dec| {
        let bound = inst.bound.unwrap_or_else(|| {
            let widest = dec.parts.iter().flat_map(|p| t.vertices().map(|v| p.degree_at(t, v))).max().unwrap_or(0);
            DegreeBound::degree(widest)
        });
        DecompositionFile {
            kind: dec.kind,
            mode: bound.mode,
            bound: bound.bound,
            parts: dec.parts.iter().map(|p| p.edges().iter().map(|e| e.0).collect()).collect(),
        }
    });
    InstanceFile {
        vertices: t.names().to_vec(),
        edges: t.edges().iter().map(|&(a, b)| (t.name(a).to_string(), t.name(b).to_string())).collect(),
        root: inst.root.map(|r| t.name(r).to_string()),
        decomposition,
    }
}

fn pretty<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("file types serialize");
    out.push(b'\n');
    out
}

pub fn emit_instance(inst: &Instance) -> Vec<u8> {
    pretty(&instance_to_file(inst))
}

/// A decimal that reads back to exactly `x` at its own precision.
pub fn decimal(x: &Float) -> String {
    let s = x.to_string_radix(10, None);
    let (mantissa, exponent) = match s.find('e') {
        Some(i) => s.split_at(i),
        None => (s.as_str(), ""),
    };
    let mantissa = if mantissa.contains('.') { mantissa.trim_end_matches('0').trim_end_matches('.') } else { mantissa };
    format!("{mantissa}{exponent}")
}

fn parse_decimal(s: &str, prec: u32, path: &str) -> Result<Float, FormatError> {
    let well_formed = {
        let body = s.strip_prefix('-').unwrap_or(s);
        let (mantissa, exponent) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], Some(&body[i + 1..])),
            None => (body, None),
        };
        let (int, frac) = match mantissa.split_once('.') {
            Some((a, b)) => (a, Some(b)),
            None => (mantissa, None),
        };
        let digits = |d: &str| !d.is_empty() && d.bytes().all(|c| c.is_ascii_digit());
        let exp_ok = exponent.map_or(true, |e| digits(e.strip_prefix(['+', '-']).unwrap_or(e)));
        digits(int) && frac.map_or(true, digits) && exp_ok
    };
    if !well_formed {
        return Err(invalid(path, format!("`{s}` is not a decimal number")));
    }
    let parsed = Float::parse(s).map_err(|e| invalid(path, e.to_string()))?;
    Ok(Float::with_val(prec, parsed))
}

/// Parses a drawing whose instance is inline. A drawing that names its
/// instance by path needs [`parse_drawing_with`].
pub fn parse_drawing(bytes: &[u8]) -> Result<Drawing, FormatError> {
    parse_drawing_with(bytes, |reference| {
        Err(FormatError::Reference {
            reference: reference.to_string(),
            message: "no base location to resolve it against".into(),
        })
    })
}

/// Parses a drawing, loading a referenced instance through `resolve`.
pub fn parse_drawing_with(
    bytes: &[u8],
    resolve: impl FnOnce(&str) -> Result<Vec<u8>, FormatError>,
) -> Result<Drawing, FormatError> {
    let file: DrawingFile = from_json(bytes, "")?;
    let instance = match file.instance {
        serde_json::Value::String(reference) => parse_instance(&resolve(&reference)?)?,
        value @ serde_json::Value::Object(_) => {
            let inline: InstanceFile = serde_path_to_error::deserialize(value).map_err(|e| {
                let path = join("instance", &e.path().to_string());
                invalid(path, e.into_inner().to_string())
            })?;
            instance_from_file(inline, "instance")?
        }
        _ => return Err(invalid("instance", "expected an instance object or a path string")),
    };
    let meta = file.metadata;
    if meta.precision_bits < MIN_PRECISION {
        return Err(invalid(
            "metadata.precision_bits",
            format!("{} is below the minimum of {MIN_PRECISION}", meta.precision_bits),
        ));
    }
    let prec = meta.precision_bits;
    let t = &instance.tree;
    let mut positions: Vec<Option<Point>> = vec![None; t.vertex_count()];
    let names: HashMap<&str, usize> = t.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    for (name, (x, y)) in &file.coordinates {
        let path = format!("coordinates.{name}");
        let &i = names.get(name.as_str()).ok_or_else(|| invalid(&path, format!("unknown vertex `{name}`")))?;
        let x = parse_decimal(x, prec, &format!("{path}[0]"))?;
        let y = parse_decimal(y, prec, &format!("{path}[1]"))?;
        positions[i] = Some(Point::new(x, y).map_err(|e| invalid(&path, e.to_string()))?);
    }
    let positions = positions
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| invalid("coordinates", format!("missing vertex `{}`", t.name(VertexId(i))))))
        .collect::<Result<Vec<_>, _>>()?;
    let meta = DrawingMeta { precision_bits: prec, construction: meta.construction, seed: meta.seed };
    Drawing::new(instance, positions, meta).map_err(|e| invalid("", e.to_string()))
}

/// Serializes a drawing with its instance inline and every coordinate as a
/// decimal string that reads back exactly.
pub fn emit_drawing(d: &Drawing) -> Vec<u8> {
    let t = d.tree();
    let coordinates = t
        .vertices()
        .map(|v| {
            let p = d.position(v);
            (t.name(v).to_string(), (decimal(p.x()), decimal(p.y())))
        })
        .collect();
    let meta = d.meta();
    let file = DrawingFile {
        instance: serde_json::to_value(instance_to_file(d.instance())).expect("instance serializes"),
        coordinates,
        metadata: MetadataFile {
            precision_bits: meta.precision_bits,
            construction: meta.construction.clone(),
            seed: meta.seed,
        },
    };
    pretty(&file)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIX_STAR: &str = r#"{
  "vertices": ["r", "v1", "v2", "v3", "v4", "v5", "v6"],
  "edges": [["r", "v1"], ["r", "v2"], ["r", "v3"], ["r", "v4"], ["r", "v5"], ["r", "v6"]],
  "decomposition": {
    "kind": "covering",
    "mode": "degree",
    "bound": 4,
    "parts": [[0, 1, 2, 3], [0, 1, 4, 5], [2, 3, 4, 5]]
  }
}"#;

    #[test]
    fn six_star_parses_and_validates() {
        let inst = parse_instance(SIX_STAR.as_bytes()).unwrap();
        assert_eq!(inst.tree.vertex_count(), 7);
        assert_eq!(inst.decomposition.as_ref().unwrap().parts.len(), 3);
        inst.validate().unwrap();
    }

    #[test]
    fn instance_round_trip() {
        let inst = parse_instance(SIX_STAR.as_bytes()).unwrap();
        let again = parse_instance(&emit_instance(&inst)).unwrap();
        assert_eq!(inst, again);
        assert_eq!(emit_instance(&inst), emit_instance(&again));
    }

    #[test]
    fn unknown_field_reports_line_and_path() {
        let text = "{\n  \"vertices\": [\"a\"],\n  \"edges\": [],\n  \"colour\": 3\n}";
        match parse_instance(text.as_bytes()) {
            Err(FormatError::Json { line, message, .. }) => {
                assert_eq!(line, 4);
                assert!(message.contains("colour"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        let nested = r#"{"vertices": ["a"], "edges": [], "decomposition": {"kind": "partition", "mode": "degree", "bound": 1, "parts": [], "extra": 0}}"#;
        match parse_instance(nested.as_bytes()) {
            Err(FormatError::Json { path, .. }) => assert_eq!(path, "decomposition.extra"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_root_with_outdegree_is_a_schema_error() {
        let text = SIX_STAR.replace("\"degree\"", "\"outdegree\"");
        match parse_instance(text.as_bytes()) {
            Err(FormatError::Invalid { path, .. }) => assert_eq!(path, "root"),
            other => panic!("{other:?}"),
        }
        let rooted = text.replacen("\"decomposition\"", "\"root\": \"r\",\n  \"decomposition\"", 1);
        assert_eq!(parse_instance(rooted.as_bytes()).unwrap().root, Some(VertexId(0)));
    }

    #[test]
    fn bad_references_name_the_field() {
        let cases = [
            (SIX_STAR.replace("[\"r\", \"v6\"]", "[\"r\", \"v9\"]"), "edges[5][1]"),
            (SIX_STAR.replace("[2, 3, 4, 5]", "[2, 3, 4, 9]"), "decomposition.parts[2][3]"),
            (SIX_STAR.replace("[2, 3, 4, 5]", "[2, 3, 3, 5]"), "decomposition.parts[2][2]"),
            (SIX_STAR.replace("\"v6\"]", "\"v5\"]"), "vertices[6]"),
        ];
        for (text, want) in cases {
            match parse_instance(text.as_bytes()) {
                Err(FormatError::Invalid { path, .. }) => assert_eq!(path, want),
                other => panic!("{want}: {other:?}"),
            }
        }
    }

    #[test]
    fn decimals_read_back_exactly() {
        for prec in [64, 256, 1000] {
            for v in [1.5, -1.23e-4, 12345.678, 0.0, 1e-30] {
                let x = Float::with_val(prec, v) / 7u32;
                let back = parse_decimal(&decimal(&x), prec, "").unwrap();
                assert_eq!(x, back);
            }
        }
        assert_eq!(decimal(&Float::with_val(64, 1.5)), "1.5");
        for bad in ["", "1.", ".5", "1e", "0x10", "nan", "inf", "1,5", "--1"] {
            assert!(parse_decimal(bad, 64, "p").is_err(), "{bad}");
        }
    }

    #[test]
    fn drawing_round_trip_and_reference() {
        let inst = parse_instance(SIX_STAR.as_bytes()).unwrap();
        let positions = (0..7)
            .map(|i| {
                let a = Float::with_val(300, i) / 3u32;
                Point::new(a.clone().cos(), a.sin()).unwrap()
            })
            .collect();
        let meta = DrawingMeta { precision_bits: 300, construction: "test".into(), seed: Some(4) };
        let d = Drawing::new(inst, positions, meta).unwrap();
        let bytes = emit_drawing(&d);
        let back = parse_drawing(&bytes).unwrap();
        assert_eq!(back, d);
        assert_eq!(emit_drawing(&back), bytes);

        let mut value: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        value["instance"] = "six.json".into();
        let referenced = serde_json::to_vec(&value).unwrap();
        assert!(matches!(parse_drawing(&referenced), Err(FormatError::Reference { .. })));
        let resolved = parse_drawing_with(&referenced, |r| {
            assert_eq!(r, "six.json");
            Ok(SIX_STAR.as_bytes().to_vec())
        })
        .unwrap();
        assert_eq!(resolved, d);
    }

    #[test]
    fn drawing_coordinates_must_match_vertices() {
        let d = r#"{"instance": {"vertices": ["a", "b"], "edges": [["a", "b"]]},
            "coordinates": {"a": ["0", "0"]},
            "metadata": {"precision_bits": 64, "construction": "x", "seed": null}}"#;
        match parse_drawing(d.as_bytes()) {
            Err(FormatError::Invalid { path, message }) => {
                assert_eq!(path, "coordinates");
                assert!(message.contains("`b`"));
            }
            other => panic!("{other:?}"),
        }
        let d = d.replace(r#"{"a": ["0", "0"]}"#, r#"{"a": ["0", "0"], "b": ["1", "x"]}"#);
        match parse_drawing(d.as_bytes()) {
            Err(FormatError::Invalid { path, .. }) => assert_eq!(path, "coordinates.b[1]"),
            other => panic!("{other:?}"),
        }
    }
}
