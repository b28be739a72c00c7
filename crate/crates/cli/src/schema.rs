//! Input files. Everything is JSON with integer payloads only.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::ToPrimitive;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thurstonlab::algebra::LaurentPoly;
use thurstonlab::bundle::{CoverDatum, Manifold3};
use thurstonlab::norms::DualBall;
use thurstonlab::swtheory::SwSupport;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub exp: Vec<i64>,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwEntry {
    pub c1: Vec<i64>,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldFile {
    pub name: String,
    pub b1: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_ball_vertices: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sw_support: Option<Vec<SwEntry>>,
    /// Indices into `dual_ball_vertices`, or into the sorted vertex list of
    /// the Alexander ball when no vertices are given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibered_marks: Option<Vec<usize>>,
}

/// Bundle files name their base inline or by a path relative to themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldRef {
    Inline(ManifoldFile),
    Path(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleFile {
    pub manifold: ManifoldRef,
    pub euler: Vec<i64>,
    pub euler_torsion: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleHeader {
    euler: Vec<i64>,
    #[serde(default)]
    euler_torsion: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoverHeader {
    deg_n: i64,
    q: i64,
    pullback: Vec<Vec<i64>>,
    pushforward: Vec<Vec<i64>>,
    #[serde(default)]
    euler: Option<Vec<i64>>,
    #[serde(default)]
    classes: Option<Vec<Vec<i64>>>,
}

fn schema_error(err: serde_path_to_error::Error<serde_json::Error>, prefix: &str) -> CliError {
    let path = err.path().to_string();
    let inner = err.into_inner();
    let path = match (prefix.is_empty(), path.as_str()) {
        (true, _) => path,
        (false, ".") => prefix.to_string(),
        (false, p) => format!("{prefix}.{p}"),
    };
    CliError::Schema {
        path,
        line: inner.line(),
        column: inner.column(),
        message: strip_position(&inner.to_string()),
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn from_text<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| schema_error(e, ""))?;
    Ok(value)
}

/// Line numbers are lost once a subtree is a `Value`; paths are kept.
fn from_value<T: DeserializeOwned>(value: Value, prefix: &str) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| schema_error(e, prefix))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_manifold_file(text: &str) -> Result<ManifoldFile, CliError> {
    from_text(text)
}

fn split_object(text: &str) -> Result<serde_json::Map<String, Value>, CliError> {
    match from_text::<Value>(text)? {
        Value::Object(map) => Ok(map),
        _ => Err(CliError::Input("top level must be a JSON object".into())),
    }
}

fn manifold_ref(value: Option<Value>, field: &str) -> Result<ManifoldRef, CliError> {
    match value {
        Some(Value::String(p)) => Ok(ManifoldRef::Path(p)),
        Some(v @ Value::Object(_)) => Ok(ManifoldRef::Inline(from_value(v, field)?)),
        Some(_) => Err(CliError::Input(format!("`{field}` must be an object or a path string"))),
        None => Err(CliError::Input(format!("missing field `{field}`"))),
    }
}

pub fn parse_bundle_file(text: &str) -> Result<BundleFile, CliError> {
    let mut map = split_object(text)?;
    let manifold = manifold_ref(map.remove("manifold"), "manifold")?;
    let header: BundleHeader = from_value(Value::Object(map), "")?;
    Ok(BundleFile {
        manifold,
        euler: header.euler,
        euler_torsion: header.euler_torsion,
    })
}

pub fn is_bundle_text(text: &str) -> bool {
    matches!(serde_json::from_str::<Value>(text), Ok(Value::Object(m)) if m.contains_key("manifold"))
}

impl ManifoldFile {
    pub fn alexander_poly(&self) -> Result<Option<LaurentPoly>, CliError> {
        let Some(terms) = &self.alexander else {
            return Ok(None);
        };
        for (i, t) in terms.iter().enumerate() {
            if t.exp.len() != self.b1 {
                return Err(CliError::Input(format!(
                    "alexander[{i}].exp has length {}, expected b1 = {}",
                    t.exp.len(),
                    self.b1
                )));
            }
        }
        let poly = LaurentPoly::from_terms(self.b1, terms.iter().map(|t| (t.exp.clone(), t.coeff)))?;
        Ok(Some(poly))
    }

    fn check_lengths(&self) -> Result<(), CliError> {
        let bad = |what: String, len: usize| {
            CliError::Input(format!("{what} has length {len}, expected b1 = {}", self.b1))
        };
        if let Some(vs) = &self.dual_ball_vertices {
            if vs.is_empty() {
                return Err(CliError::Input("dual_ball_vertices is empty".into()));
            }
            for (i, v) in vs.iter().enumerate() {
                if v.len() != self.b1 {
                    return Err(bad(format!("dual_ball_vertices[{i}]"), v.len()));
                }
            }
        }
        if let Some(sw) = &self.sw_support {
            for (i, e) in sw.iter().enumerate() {
                if e.c1.len() != self.b1 {
                    return Err(bad(format!("sw_support[{i}].c1"), e.c1.len()));
                }
            }
        }
        Ok(())
    }

    /// Validated model. Without vertices the ball follows the Alexander
    /// convention and the manifold records that source.
    pub fn to_manifold(&self) -> Result<Manifold3, CliError> {
        if self.b1 == 0 {
            return Err(CliError::Input("b1 must be at least 1".into()));
        }
        if self.alexander.is_none() && self.dual_ball_vertices.is_none() {
            return Err(CliError::Input(
                "one of `alexander` or `dual_ball_vertices` is required".into(),
            ));
        }
        self.check_lengths()?;
        let delta = self.alexander_poly()?;
        let ball = match &self.dual_ball_vertices {
            Some(vs) => Some(DualBall::from_vertices(vs)?),
            None => None,
        };
        let sw = match &self.sw_support {
            Some(entries) => Some(SwSupport::new(
                self.b1,
                entries.iter().map(|e| (e.c1.clone(), e.value)),
            )?),
            None => None,
        };
        let marks = match &self.fibered_marks {
            None => None,
            Some(idx) => {
                let pool: Vec<Vec<i64>> = match (&self.dual_ball_vertices, &delta) {
                    (Some(vs), _) => vs.clone(),
                    (None, Some(d)) => thurstonlab::norms::alexander_dual_ball(d)?.vertices().to_vec(),
                    (None, None) => unreachable!("checked above"),
                };
                let mut out = Vec::with_capacity(idx.len());
                for (k, &i) in idx.iter().enumerate() {
                    let v = pool.get(i).ok_or_else(|| {
                        CliError::Input(format!(
                            "fibered_marks[{k}] = {i} is out of range ({} vertices)",
                            pool.len()
                        ))
                    })?;
                    out.push(v.clone());
                }
                Some(out)
            }
        };
        Ok(Manifold3::new(self.name.clone(), self.b1, delta, ball, sw, marks)?)
    }

    /// Sorted, merged Alexander terms and SW entries; vertex order is kept
    /// because marks index into it.
    pub fn canonical(&self) -> Result<ManifoldFile, CliError> {
        self.check_lengths()?;
        let alexander = match self.alexander_poly()? {
            None => None,
            Some(p) => Some(
                p.terms()
                    .map(|(e, c)| {
                        let coeff = c
                            .to_i64()
                            .ok_or_else(|| CliError::Input(format!("coefficient {c} exceeds 64 bits")))?;
                        Ok(Term { exp: e.clone(), coeff })
                    })
                    .collect::<Result<Vec<_>, CliError>>()?,
            ),
        };
        let sw_support = self.sw_support.as_ref().map(|entries| {
            let mut merged: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
            for e in entries {
                *merged.entry(e.c1.clone()).or_default() += e.value;
            }
            merged
                .into_iter()
                .filter(|(_, v)| *v != 0)
                .map(|(c1, value)| SwEntry { c1, value })
                .collect()
        });
        Ok(ManifoldFile {
            name: self.name.clone(),
            b1: self.b1,
            alexander,
            dual_ball_vertices: self.dual_ball_vertices.clone(),
            sw_support,
            fibered_marks: self.fibered_marks.clone(),
        })
    }
}

/// Resolves a manifold reference relative to the directory of `origin`.
pub fn resolve(r: &ManifoldRef, origin: &Path) -> Result<ManifoldFile, CliError> {
    match r {
        ManifoldRef::Inline(m) => Ok(m.clone()),
        ManifoldRef::Path(p) => {
            let path = origin.parent().unwrap_or(Path::new(".")).join(p);
            parse_manifold_file(&read(&path)?)
        }
    }
}

/// A manifold file, or a bundle file with its base resolved.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub file: ManifoldFile,
    pub manifold: Manifold3,
    pub euler: Option<Vec<i64>>,
    pub euler_torsion: bool,
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = read(path)?;
    if is_bundle_text(&text) {
        let b = parse_bundle_file(&text)?;
        let file = resolve(&b.manifold, path)?;
        let manifold = file.to_manifold()?;
        Ok(Loaded {
            file,
            manifold,
            euler: Some(b.euler),
            euler_torsion: b.euler_torsion,
        })
    } else {
        let file = parse_manifold_file(&text)?;
        let manifold = file.to_manifold()?;
        Ok(Loaded {
            file,
            manifold,
            euler: None,
            euler_torsion: false,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CoverFile {
    pub datum: CoverDatum,
    pub base: Manifold3,
    pub euler: Option<Vec<i64>>,
    pub classes: Option<Vec<Vec<i64>>>,
}

pub fn load_cover(path: &Path) -> Result<CoverFile, CliError> {
    let text = read(path)?;
    let mut map = split_object(&text)?;
    let base = manifold_ref(map.remove("base"), "base")?;
    let cover = manifold_ref(map.remove("cover"), "cover")?;
    let h: CoverHeader = from_value(Value::Object(map), "")?;
    let base = resolve(&base, path)?.to_manifold()?;
    let cover_base = resolve(&cover, path)?.to_manifold()?;
    Ok(CoverFile {
        datum: CoverDatum {
            deg_n: h.deg_n,
            q: h.q,
            pullback: h.pullback,
            pushforward: h.pushforward,
            cover_base,
        },
        base,
        euler: h.euler,
        classes: h.classes,
    })
}
