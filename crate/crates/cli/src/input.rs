//! Graph files and command-line values.
//!
//! A graph file is JSON in one of three shapes:
//!
//! ```text
//! {"orders": [2, 4], "set": [[0, 1], [0, 3]]}   general
//! {"n": 6, "set": [1, 5]}                       circulant
//! {"r": 3, "set": ["010", "110"]}               cubelike, first character is the first coordinate
//! ```

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::path::Path;

use revival_core::group::{GroupElement, GroupSpec};
use revival_core::spectra::{validate_connection_set, ConnectionSet};
use serde::Deserialize;
use serde_json::Value;

/// Bad input: unreadable file, malformed JSON, invalid group or set.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<revival_core::Error> for InputError {
    fn from(e: revival_core::Error) -> Self {
        InputError(e.to_string())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneralFile {
    orders: Vec<usize>,
    set: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CirculantFile {
    n: usize,
    set: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CubelikeFile {
    r: usize,
    set: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    General,
    Circulant,
    Cubelike,
}

/// A group and a raw (not yet validated) set.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub shape: Shape,
    pub spec: GroupSpec,
    pub raw: Vec<GroupElement>,
}

impl GraphFile {
    pub fn read(path: &Path) -> Result<Self, InputError> {
        let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        let value: Value = serde_json::from_str(text).map_err(|e| InputError(format!("invalid JSON: {e}")))?;
        let Value::Object(map) = &value else {
            return Err(InputError("expected a JSON object".into()));
        };
        let typed = |e: serde_json::Error| InputError(e.to_string());
        if map.contains_key("orders") {
            let file: GeneralFile = serde_json::from_str(text).map_err(typed)?;
            let spec = GroupSpec::new(&file.orders).map_err(|e| InputError(format!("field `orders`: {e}")))?;
            let raw = file
                .set
                .iter()
                .enumerate()
                .map(|(i, coords)| element_in_range(&spec, coords).map_err(|e| InputError(format!("set[{i}]: {e}"))))
                .collect::<Result<_, _>>()?;
            Ok(Self { shape: Shape::General, spec, raw })
        } else if map.contains_key("n") {
            let file: CirculantFile = serde_json::from_str(text).map_err(typed)?;
            let spec = GroupSpec::cyclic(file.n).map_err(|e| InputError(format!("field `n`: {e}")))?;
            let raw = file
                .set
                .iter()
                .enumerate()
                .map(|(i, &g)| element_in_range(&spec, &[g]).map_err(|e| InputError(format!("set[{i}]: {e}"))))
                .collect::<Result<_, _>>()?;
            Ok(Self { shape: Shape::Circulant, spec, raw })
        } else if map.contains_key("r") {
            let file: CubelikeFile = serde_json::from_str(text).map_err(typed)?;
            let spec = GroupSpec::cube(file.r).map_err(|e| InputError(format!("field `r`: {e}")))?;
            let raw = file
                .set
                .iter()
                .enumerate()
                .map(|(i, bits)| parse_bitstring(&spec, bits).map_err(|e| InputError(format!("set[{i}]: {e}"))))
                .collect::<Result<_, _>>()?;
            Ok(Self { shape: Shape::Cubelike, spec, raw })
        } else {
            Err(InputError("expected one of the fields `orders`, `n` or `r`".into()))
        }
    }

    pub fn connection_set(&self) -> Result<ConnectionSet, InputError> {
        validate_connection_set(&self.spec, &self.raw).map_err(|e| InputError(format!("invalid connection set: {e}")))
    }
}

fn element_in_range(spec: &GroupSpec, coords: &[i64]) -> Result<GroupElement, InputError> {
    if coords.len() != spec.rank() {
        return Err(InputError(format!("expected {} coordinates, got {}", spec.rank(), coords.len())));
    }
    let mut out = Vec::with_capacity(coords.len());
    for (s, (&x, &n)) in coords.iter().zip(spec.orders()).enumerate() {
        match usize::try_from(x) {
            Ok(x) if x < n => out.push(x),
            _ => return Err(InputError(format!("coordinate {} is {x}, outside 0..{n}", s + 1))),
        }
    }
    Ok(spec.element(&out)?)
}

fn parse_bitstring(spec: &GroupSpec, bits: &str) -> Result<GroupElement, InputError> {
    if bits.len() != spec.rank() || !bits.chars().all(|c| c == '0' || c == '1') {
        return Err(InputError(format!("{bits:?} is not a bit string of length {}", spec.rank())));
    }
    Ok(spec.element(&bits.bytes().map(|b| usize::from(b - b'0')).collect::<Vec<_>>())?)
}

/// `3`, `(1,0,1)`, `1,0,1`, or for cubes also `101`.
pub fn parse_element(spec: &GroupSpec, s: &str) -> Result<GroupElement, InputError> {
    let t = s.trim();
    let inner = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
    if spec.rank() > 1 && !inner.contains(',') && spec.is_cubelike() {
        return parse_bitstring(spec, inner);
    }
    let coords = inner
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| InputError(format!("{s:?} is not a group element"))))
        .collect::<Result<Vec<_>, _>>()?;
    element_in_range(spec, &coords).map_err(|e| InputError(format!("{s:?}: {e}")))
}

/// `p/q` or `p`, read as a multiple of 2π.
pub fn parse_time(s: &str) -> Result<(i64, u64), InputError> {
    let bad = || InputError(format!("{s:?} is not a time of the form p/q"));
    let t = s.trim();
    let (p, q) = t.split_once('/').unwrap_or((t, "1"));
    let p = p.trim().parse::<i64>().map_err(|_| bad())?;
    let q = q.trim().parse::<u64>().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok((p, q))
}

/// A real time: `2.5`, `pi`, `2pi/3`, `3*pi/4`.
pub fn parse_real_time(s: &str) -> Result<f64, InputError> {
    let bad = || InputError(format!("{s:?} is not a time"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let value = match t.split_once("pi") {
        None => t.parse::<f64>().map_err(|_| bad())?,
        Some((coef, rest)) => {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let coef = if coef.is_empty() { 1.0 } else { coef.parse::<f64>().map_err(|_| bad())? };
            let denom = match rest {
                "" => 1.0,
                _ => rest.strip_prefix('/').ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?,
            };
            coef * PI / denom
        }
    };
    if !value.is_finite() || value < 0.0 {
        return Err(bad());
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_shapes() {
        let g = GraphFile::parse(r#"{"n": 6, "set": [1, 5]}"#).unwrap();
        assert_eq!(g.shape, Shape::Circulant);
        assert_eq!(g.connection_set().unwrap().len(), 2);
        let g = GraphFile::parse(r#"{"orders": [2, 2, 2], "set": [[0, 1, 0], [1, 1, 0]]}"#).unwrap();
        assert_eq!(g.spec.size(), 8);
        let g = GraphFile::parse(r#"{"r": 3, "set": ["010", "110"]}"#).unwrap();
        assert_eq!(g.raw[1].coords(), [1, 1, 0]);
    }

    #[test]
    fn file_errors() {
        let e = GraphFile::parse(r#"{"n": 6, "set": [1, 2]}"#).unwrap().connection_set().unwrap_err();
        assert!(e.0.contains("not symmetric"), "{e}");
        assert!(GraphFile::parse(r#"{"n": 6, "set": [7]}"#).unwrap_err().0.contains("set[0]"));
        let e = GraphFile::parse("{\"n\": 6,\n \"set\": [1, \"x\"]}").unwrap_err();
        assert!(e.0.contains("line 2"), "{e}");
        assert!(GraphFile::parse(r#"{"n": 6, "set": [1], "extra": 0}"#).is_err());
        assert!(GraphFile::parse(r#"{"orders": [2, 2], "set": [[1]]}"#).is_err());
        assert!(GraphFile::parse(r#"{"r": 2, "set": ["012"]}"#).is_err());
        assert!(GraphFile::parse("[]").is_err());
    }

    #[test]
    fn values() {
        let z2 = GroupSpec::cube(3).unwrap();
        assert_eq!(parse_element(&z2, "(1,1,1)").unwrap().coords(), [1, 1, 1]);
        assert_eq!(parse_element(&z2, "101").unwrap().coords(), [1, 0, 1]);
        assert_eq!(parse_element(&z2, "1, 0, 0").unwrap().coords(), [1, 0, 0]);
        assert!(parse_element(&z2, "2,0,0").is_err());
        let z6 = GroupSpec::cyclic(6).unwrap();
        assert_eq!(parse_element(&z6, "3").unwrap().coords(), [3]);
        assert_eq!(parse_time("1/3").unwrap(), (1, 3));
        assert_eq!(parse_time("2").unwrap(), (2, 1));
        assert!(parse_time("1/0").is_err());
        assert!((parse_real_time("2pi/3").unwrap() - 2.0 * PI / 3.0).abs() < 1e-15);
        assert!((parse_real_time("3*pi/4").unwrap() - 0.75 * PI).abs() < 1e-15);
        assert_eq!(parse_real_time("pi").unwrap(), PI);
        assert_eq!(parse_real_time("2.5").unwrap(), 2.5);
        assert!(parse_real_time("-1").is_err());
        assert!(parse_real_time("2pi3").is_err());
    }
}
