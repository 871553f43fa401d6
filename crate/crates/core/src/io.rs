//! JSON formats for arrangements, point sets and regions.
//!
//! Rationals are strings `"p/q"` (or `"p"` when integral); plain JSON
//! integers are accepted on input. Output is canonical: reduced fractions,
//! fixed key order, two-space indentation, trailing newline.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::arrangement::{Arrangement, Region};
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, parse_rational, Rational};

/// Points (or ranking objects) as read from a file, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointsFile {
    pub dimension: usize,
    pub points: Vec<Vec<Rational>>,
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse_document(text: &str) -> Result<Map<String, Value>> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    match value {
        Value::Object(m) => Ok(m),
        _ => Err(Error::parse("document", "expected a JSON object")),
    }
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, context: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| Error::parse(context, format!("missing field {key:?}")))
}

fn as_count(v: &Value, context: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::parse(context, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, context: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(context, "expected an array"))
}

fn as_rational(v: &Value, context: &str) -> Result<Rational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(Error::parse(context, "expected a rational string \"p/q\" or an integer")),
    };
    parse_rational(&text).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(context, message),
        other => other,
    })
}

fn as_vector(v: &Value, dimension: usize, context: &str) -> Result<Vec<Rational>> {
    let items = as_array(v, context)?;
    if items.len() != dimension {
        return Err(Error::parse(context, format!("expected {dimension} coordinates, found {}", items.len())));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| as_rational(x, &format!("{context}[{i}]")))
        .collect()
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rational(x))).collect())
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

pub fn arrangement_from_json(text: &str) -> Result<Arrangement> {
    let doc = parse_document(text)?;
    let dimension = as_count(field(&doc, "dimension", "document")?, "dimension")?;
    let planes = as_array(field(&doc, "hyperplanes", "document")?, "hyperplanes")?
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let ctx = format!("hyperplanes[{i}]");
            let m = h.as_object().ok_or_else(|| Error::parse(ctx.clone(), "expected an object"))?;
            let normal = as_vector(field(m, "normal", &ctx)?, dimension, &format!("{ctx}.normal"))?;
            let bias = as_rational(field(m, "bias", &ctx)?, &format!("{ctx}.bias"))?;
            Ok((normal, bias))
        })
        .collect::<Result<Vec<_>>>()?;
    Arrangement::new(dimension, planes)
}

pub fn arrangement_to_value(a: &Arrangement) -> Value {
    json!({
        "dimension": a.dimension(),
        "hyperplanes": a.hyperplanes().iter().map(|h| json!({
            "normal": rationals(h.normal()),
            "bias": format_rational(h.bias()),
        })).collect::<Vec<_>>(),
    })
}

pub fn arrangement_to_json(a: &Arrangement) -> String {
    render(&arrangement_to_value(a))
}

pub fn points_from_json(text: &str) -> Result<PointsFile> {
    let doc = parse_document(text)?;
    let dimension = as_count(field(&doc, "dimension", "document")?, "dimension")?;
    let points = as_array(field(&doc, "points", "document")?, "points")?
        .iter()
        .enumerate()
        .map(|(i, p)| as_vector(p, dimension, &format!("points[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(PointsFile { dimension, points })
}

pub fn points_to_value(dimension: usize, points: &[Vec<Rational>]) -> Value {
    json!({
        "dimension": dimension,
        "points": points.iter().map(|p| rationals(p)).collect::<Vec<_>>(),
    })
}

pub fn points_to_json(dimension: usize, points: &[Vec<Rational>]) -> String {
    render(&points_to_value(dimension, points))
}

pub fn region_to_value(r: &Region) -> Value {
    json!({
        "signs": r.signs.to_string(),
        "witness": rationals(&r.witness),
    })
}

pub fn to_pretty(value: &Value) -> String {
    render(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::random_arrangement;
    use crate::exactmath::{int, rat};
    use proptest::prelude::*;

    const TRIANGLE: &str = r#"{"dimension": 2, "hyperplanes": [
        {"normal": ["1", "0"], "bias": "0"},
        {"normal": [0, 1], "bias": 0},
        {"normal": ["2/2", "1"], "bias": "1"}]}"#;

    #[test]
    fn parses_triangle() {
        let a = arrangement_from_json(TRIANGLE).unwrap();
        assert_eq!((a.len(), a.dimension()), (3, 2));
        assert_eq!(a.hyperplane(2).normal()[0], int(1));
        let text = arrangement_to_json(&a);
        assert!(text.contains("\"normal\": [\n        \"1\",\n        \"1\"\n      ]"));
        assert_eq!(arrangement_from_json(&text).unwrap(), a);
    }

    #[test]
    fn errors_carry_context() {
        let bad = TRIANGLE.replace("\"2/2\"", "\"1/0\"");
        match arrangement_from_json(&bad) {
            Err(Error::Parse { context, .. }) => assert_eq!(context, "hyperplanes[2].normal[0]"),
            other => panic!("unexpected {other:?}"),
        }
        match arrangement_from_json("{\"dimension\": 2,\n \"hyperplanes\": [}") {
            Err(Error::Parse { context, .. }) => assert!(context.starts_with("line 2")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            arrangement_from_json(r#"{"dimension": 2, "hyperplanes": [{"normal": ["1"], "bias": "0"}]}"#),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(points_from_json(r#"{"dimension": 1}"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn points_round_trip() {
        let pts = vec![vec![rat(1, 2), int(-3)], vec![int(0), rat(7, 9)]];
        let text = points_to_json(2, &pts);
        assert_eq!(points_from_json(&text).unwrap(), PointsFile { dimension: 2, points: pts });
        assert_eq!(text, points_to_json(2, &points_from_json(&text).unwrap().points));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn canonical_round_trip(n in 1usize..=6, d in 1usize..=3, seed in any::<u64>()) {
            let a = random_arrangement(n, d, 1, seed).unwrap().rescaled(&[rat(3, 7), rat(-5, 2)]).unwrap();
            let text = arrangement_to_json(&a);
            let back = arrangement_from_json(&text).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(arrangement_to_json(&back), text);
        }
    }
}
