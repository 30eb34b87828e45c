//! File formats. Every document may carry `"format": "dybkit/1"`; it is
//! written on output and checked only when present on input. Shape errors
//! become `ParseError`; values that parse but violate a type's invariants
//! surface as that type's own error.

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::composite::{QuasigroupFamily, YbCandidate};
use crate::dyb::DybCandidate;
use crate::dynset::{DynMorphism, DynSet, VertexSet};
use crate::embedding::BraidedQuiverMap;
use crate::error::{Error, Result};
use crate::ph::{LeftQuasigroup, TernaryOp};
use crate::quiver::{Arrow, Quiver};

pub const FORMAT: &str = "dybkit/1";

/// A type with a JSON file format.
pub trait Document: Sized {
    fn to_value(&self) -> Value;
    fn from_value(v: Value) -> Result<Self>;
}

/// Compact JSON with the format tag first.
pub fn to_json<T: Document>(doc: &T) -> String {
    tagged(doc.to_value()).to_string()
}

pub fn to_json_pretty<T: Document>(doc: &T) -> String {
    serde_json::to_string_pretty(&tagged(doc.to_value())).expect("json")
}

/// Adds the format tag to any serializable value that is an object.
pub fn tag_serialize<T: Serialize>(v: &T) -> Value {
    tagged(serde_json::to_value(v).expect("serializable"))
}

fn tagged(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut out = Map::new();
            out.insert("format".into(), Value::String(FORMAT.into()));
            out.extend(m.into_iter().filter(|(k, _)| k != "format"));
            Value::Object(out)
        }
        other => other,
    }
}

/// Parses `text` read from `path` into `T`.
pub fn parse<T: Document>(path: &str, text: &str) -> Result<T> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_error(path, &e))?;
    T::from_value(strip_format(path, v)?).map_err(|e| match e {
        Error::Parse { position, message, .. } => Error::Parse {
            path: path.into(),
            position,
            message,
        },
        other => other,
    })
}

/// Parses a plain serde type, honoring the format tag.
pub fn parse_serde<T: DeserializeOwned>(path: &str, text: &str) -> Result<T> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_error(path, &e))?;
    from_repr(strip_format(path, v)?).map_err(|e| match e {
        Error::Parse { position, message, .. } => Error::Parse {
            path: path.into(),
            position,
            message,
        },
        other => other,
    })
}

fn parse_error(path: &str, e: &serde_json::Error) -> Error {
    Error::Parse {
        path: path.into(),
        position: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    }
}

fn strip_format(path: &str, v: Value) -> Result<Value> {
    match v {
        Value::Object(mut m) => {
            if let Some(f) = m.remove("format") {
                if f != Value::String(FORMAT.into()) {
                    return Err(Error::Parse {
                        path: path.into(),
                        position: "format".into(),
                        message: format!("unsupported format {f}, expected {FORMAT:?}"),
                    });
                }
            }
            Ok(Value::Object(m))
        }
        other => Ok(other),
    }
}

fn from_repr<T: DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse {
        path: String::new(),
        position: "document".into(),
        message: e.to_string(),
    })
}

fn to_repr<T: Serialize>(r: &T) -> Value {
    serde_json::to_value(r).expect("serializable")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DynSetRepr {
    n: usize,
    m: usize,
    action: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl DynSetRepr {
    fn of(x: &DynSet) -> Self {
        DynSetRepr {
            n: x.n(),
            m: x.m(),
            action: x.action_rows(),
            labels: x.vertices().labels().map(<[String]>::to_vec),
        }
    }

    fn build(self) -> Result<DynSet> {
        let vertices = match self.labels {
            Some(l) => {
                if l.len() != self.n {
                    return Err(Error::Shape {
                        table: "labels",
                        detail: format!("{} labels for {} vertices", l.len(), self.n),
                    });
                }
                VertexSet::with_labels(l)?
            }
            None => VertexSet::new(self.n)?,
        };
        DynSet::with_vertices(vertices, self.m, self.action)
    }
}

impl Document for DynSet {
    fn to_value(&self) -> Value {
        to_repr(&DynSetRepr::of(self))
    }
    fn from_value(v: Value) -> Result<Self> {
        from_repr::<DynSetRepr>(v)?.build()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowRepr {
    src: usize,
    tgt: usize,
    label: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverRepr {
    n: usize,
    arrows: Vec<ArrowRepr>,
}

impl QuiverRepr {
    fn of(q: &Quiver) -> Self {
        QuiverRepr {
            n: q.n(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowRepr {
                    src: a.src,
                    tgt: a.tgt,
                    label: a.label.clone(),
                })
                .collect(),
        }
    }

    fn build(self) -> Result<Quiver> {
        Quiver::new(
            VertexSet::new(self.n)?,
            self.arrows
                .into_iter()
                .map(|a| Arrow {
                    src: a.src,
                    tgt: a.tgt,
                    label: a.label,
                })
                .collect(),
        )
    }
}

impl Document for Quiver {
    fn to_value(&self) -> Value {
        to_repr(&QuiverRepr::of(self))
    }
    fn from_value(v: Value) -> Result<Self> {
        from_repr::<QuiverRepr>(v)?.build()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DybRepr {
    dynset: DynSetRepr,
    #[serde(rename = "L")]
    l: Vec<Vec<Vec<usize>>>,
    #[serde(rename = "R")]
    r: Vec<Vec<Vec<usize>>>,
}

impl Document for DybCandidate {
    fn to_value(&self) -> Value {
        to_repr(&DybRepr {
            dynset: DynSetRepr::of(self.dynset()),
            l: self.l_table(),
            r: self.r_table(),
        })
    }
    fn from_value(v: Value) -> Result<Self> {
        let r: DybRepr = from_repr(v)?;
        DybCandidate::new(r.dynset.build()?, r.l, r.r)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismRepr {
    source: DynSetRepr,
    target: DynSetRepr,
    rows: Vec<Vec<usize>>,
}

impl Document for DynMorphism {
    fn to_value(&self) -> Value {
        to_repr(&MorphismRepr {
            source: DynSetRepr::of(self.source()),
            target: DynSetRepr::of(self.target()),
            rows: self.rows(),
        })
    }
    fn from_value(v: Value) -> Result<Self> {
        let r: MorphismRepr = from_repr(v)?;
        DynMorphism::from_rows(r.source.build()?, r.target.build()?, r.rows)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TernaryRepr {
    n: usize,
    table: Vec<usize>,
}

impl Document for TernaryOp {
    fn to_value(&self) -> Value {
        to_repr(&TernaryRepr {
            n: self.n(),
            table: self.table().to_vec(),
        })
    }
    fn from_value(v: Value) -> Result<Self> {
        let r: TernaryRepr = from_repr(v)?;
        TernaryOp::new(r.n, r.table)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuasigroupRepr {
    n: usize,
    op: Vec<Vec<usize>>,
}

fn quasigroup(n: usize, op: Vec<Vec<usize>>) -> Result<LeftQuasigroup> {
    if op.len() != n {
        return Err(Error::Shape {
            table: "op",
            detail: format!("{} rows for n = {n}", op.len()),
        });
    }
    LeftQuasigroup::new(op)
}

impl Document for LeftQuasigroup {
    fn to_value(&self) -> Value {
        to_repr(&QuasigroupRepr {
            n: self.n(),
            op: self.op_rows(),
        })
    }
    fn from_value(v: Value) -> Result<Self> {
        let r: QuasigroupRepr = from_repr(v)?;
        quasigroup(r.n, r.op)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyRepr {
    colors: usize,
    ops: Vec<Vec<Vec<usize>>>,
}

impl Document for QuasigroupFamily {
    fn to_value(&self) -> Value {
        to_repr(&FamilyRepr {
            colors: self.colors(),
            ops: self.ops().iter().map(LeftQuasigroup::op_rows).collect(),
        })
    }
    fn from_value(v: Value) -> Result<Self> {
        let r: FamilyRepr = from_repr(v)?;
        if r.ops.len() != r.colors {
            return Err(Error::Shape {
                table: "ops",
                detail: format!("{} operations for {} colors", r.ops.len(), r.colors),
            });
        }
        QuasigroupFamily::new(r.ops.into_iter().map(LeftQuasigroup::new).collect::<Result<_>>()?)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct YbRepr {
    k: usize,
    #[serde(rename = "L")]
    l: Vec<Vec<usize>>,
    #[serde(rename = "R")]
    r: Vec<Vec<usize>>,
}

impl Document for YbCandidate {
    fn to_value(&self) -> Value {
        to_repr(&YbRepr {
            k: self.k(),
            l: self.l_rows(),
            r: self.r_rows(),
        })
    }
    fn from_value(v: Value) -> Result<Self> {
        let r: YbRepr = from_repr(v)?;
        YbCandidate::new(r.k, r.l, r.r)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BraidedRepr {
    quiver: QuiverRepr,
    /// `[a, b, c, d]` arrow labels with `σ̃(a, b) = (c, d)`.
    map: Vec<[String; 4]>,
}

impl Document for BraidedQuiverMap {
    fn to_value(&self) -> Value {
        to_repr(&BraidedRepr {
            quiver: QuiverRepr::of(self.quiver()),
            map: self.label_quadruples(),
        })
    }
    fn from_value(v: Value) -> Result<Self> {
        let r: BraidedRepr = from_repr(v)?;
        let q = r.quiver.build()?;
        let find = |l: &str| {
            q.arrows()
                .iter()
                .position(|a| a.label == l)
                .ok_or_else(|| Error::InvalidLabels(format!("unknown arrow label {l:?}")))
        };
        let (_, pairs) = crate::quiver::fiber_product(&q, &q)?;
        let pair_of = |u: &str, w: &str| -> Result<usize> {
            let key = (find(u)?, find(w)?);
            pairs
                .iter()
                .position(|&p| p == key)
                .ok_or_else(|| Error::InvalidPath(format!("({u}, {w}) is not composable")))
        };
        let mut table = vec![usize::MAX; pairs.len()];
        for [a, b, c, d] in &r.map {
            table[pair_of(a, b)?] = pair_of(c, d)?;
        }
        if let Some(p) = table.iter().position(|&t| t == usize::MAX) {
            return Err(Error::Shape {
                table: "map",
                detail: format!("no image given for composable pair {p}"),
            });
        }
        BraidedQuiverMap::new(q, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::braided_quiver;
    use crate::fixtures;
    use crate::ph::sigma_from_ternary;

    fn round<T: Document + PartialEq + std::fmt::Debug>(x: &T) {
        let s = to_json(x);
        assert!(s.starts_with(r#"{"format":"dybkit/1""#));
        assert_eq!(&parse::<T>("mem", &s).unwrap(), x);
    }

    #[test]
    fn round_trips() {
        round(&fixtures::f_g());
        round(&fixtures::group_ternary(3));
        round(&LeftQuasigroup::cyclic(3));
        round(&fixtures::z2_family());
        round(&fixtures::flip(2));
        let s = sigma_from_ternary(&fixtures::f_g(), &fixtures::group_ternary(2)).unwrap();
        round(&s);
        round(&braided_quiver(&s).unwrap());
        round(&crate::embedding::q_object(&fixtures::f_g()));
        round(&DynMorphism::identity(&fixtures::f_g()));
    }

    #[test]
    fn format_tag_optional_but_checked() {
        let t: TernaryOp = parse("t.json", r#"{"n":1,"table":[0]}"#).unwrap();
        assert_eq!(t.n(), 1);
        let e = parse::<TernaryOp>("t.json", r#"{"format":"dybkit/2","n":1,"table":[0]}"#).unwrap_err();
        assert_eq!(e.code(), "ParseError");
    }

    #[test]
    fn errors() {
        let e = parse::<DynSet>("x.json", "{\"n\": 2,\n \"m\": ").unwrap_err();
        match e {
            Error::Parse { path, position, .. } => {
                assert_eq!(path, "x.json");
                assert!(position.starts_with("line 2"));
            }
            other => panic!("{other:?}"),
        }
        let e = parse::<DynSet>("x.json", r#"{"n":2,"m":1,"action":[[0],[5]]}"#).unwrap_err();
        assert_eq!(e.code(), "OutOfRange");
        let e = parse::<DynSet>("x.json", r#"{"n":2,"m":1,"action":[[0],[1]],"extra":1}"#).unwrap_err();
        assert_eq!(e.code(), "ParseError");
    }
}
