//! JSON wire formats. Matrix entries and map values are decimal strings on
//! output; input also accepts plain JSON numbers. Empty matrices lose their
//! column count on the wire, so shapes are recovered from `ranks`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::doldkan::ChainComplex;
use crate::dwyerkan::DuchainComplex;
use crate::error::{Error, Result};
use crate::index_cat::{Flavor, XiMap};
use crate::linalg::IntMatrix;
use crate::objects::{DuplicialGroup, GeneratorMatrices, SimplicialGroup};

/// Any object the command line reads or writes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Simplicial(SimplicialGroup),
    Duplicial(DuplicialGroup),
    Chain(ChainComplex),
    Duchain(DuchainComplex),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Simplicial(_) => "simplicial",
            Object::Duplicial(_) => "duplicial",
            Object::Chain(_) => "chain",
            Object::Duchain(_) => "duchain",
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Object::Simplicial(x) => simplicial_value(x, "simplicial", None),
            Object::Duplicial(x) => simplicial_value(x.underlying(), "duplicial", Some(x.extra_degeneracies())),
            Object::Chain(b) => serde_json::to_value(ChainWire {
                kind: "chain".into(),
                trunc: b.trunc(),
                ranks: b.ranks().to_vec(),
                d: b.differentials().to_vec(),
                delta: None,
            })
            .expect("serializable"),
            Object::Duchain(b) => serde_json::to_value(ChainWire {
                kind: "duchain".into(),
                trunc: b.trunc(),
                ranks: b.ranks().to_vec(),
                d: b.chain().differentials().to_vec(),
                delta: Some(b.deltas().to_vec()),
            })
            .expect("serializable"),
        }
    }

    pub fn from_value(v: Value) -> Result<Object> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing \"kind\"".into()))?
            .to_owned();
        match kind.as_str() {
            "simplicial" | "duplicial" => {
                let w: ObjectWire = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
                w.into_object(kind == "duplicial")
            }
            "chain" | "duchain" => {
                let w: ChainWire = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
                w.into_object(kind == "duchain")
            }
            other => Err(Error::Parse(format!("unknown kind {other:?}"))),
        }
    }

    pub fn from_json(text: &str) -> Result<Object> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Object::from_value(v)
    }
}

fn simplicial_value(x: &SimplicialGroup, kind: &str, extra: Option<&[IntMatrix]>) -> Value {
    let trunc = x.trunc();
    let degeneracies = (0..trunc)
        .map(|n| {
            let mut level = x.degeneracies()[n].clone();
            if let Some(e) = extra {
                level.push(e[n].clone());
            }
            level
        })
        .collect();
    serde_json::to_value(ObjectWire {
        kind: kind.into(),
        trunc,
        ranks: x.ranks().to_vec(),
        faces: x.faces().to_vec(),
        degeneracies,
    })
    .expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct ObjectWire {
    kind: String,
    trunc: usize,
    ranks: Vec<usize>,
    faces: Vec<Vec<IntMatrix>>,
    degeneracies: Vec<Vec<IntMatrix>>,
}

#[derive(Serialize, Deserialize)]
struct ChainWire {
    kind: String,
    trunc: usize,
    ranks: Vec<usize>,
    d: Vec<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<Vec<IntMatrix>>,
}

fn check_ranks(trunc: usize, ranks: &[usize]) -> Result<()> {
    if ranks.len() != trunc + 1 {
        return Err(Error::Parse(format!("{} ranks for truncation {trunc}", ranks.len())));
    }
    Ok(())
}

fn shaped(m: IntMatrix, rows: usize, cols: usize, what: impl FnOnce() -> String) -> Result<IntMatrix> {
    m.with_shape(rows, cols).map_err(|_| Error::Parse(format!("{} has the wrong shape", what())))
}

impl ObjectWire {
    fn into_object(self, duplicial: bool) -> Result<Object> {
        let ObjectWire {
            trunc,
            ranks,
            faces,
            degeneracies,
            ..
        } = self;
        check_ranks(trunc, &ranks)?;
        if faces.len() != trunc + 1 {
            return Err(Error::Parse(format!("faces must have {} levels", trunc + 1)));
        }
        if degeneracies.len() != trunc {
            return Err(Error::Parse(format!("degeneracies must have {trunc} levels")));
        }
        let faces = faces
            .into_iter()
            .enumerate()
            .map(|(n, level)| {
                level
                    .into_iter()
                    .enumerate()
                    .map(|(i, m)| {
                        if n == 0 {
                            return Err(Error::Parse("degree 0 has no faces".into()));
                        }
                        shaped(m, ranks[n - 1], ranks[n], || format!("faces[{n}][{i}]"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut ordinary = Vec::with_capacity(trunc);
        let mut extra = Vec::with_capacity(trunc);
        for (n, level) in degeneracies.into_iter().enumerate() {
            let expected = if duplicial { n + 2 } else { n + 1 };
            if level.len() != expected {
                return Err(Error::Parse(format!("degeneracies[{n}] needs {expected} matrices")));
            }
            let mut level = level
                .into_iter()
                .enumerate()
                .map(|(i, m)| shaped(m, ranks[n + 1], ranks[n], || format!("degeneracies[{n}][{i}]")))
                .collect::<Result<Vec<_>>>()?;
            if duplicial {
                extra.push(level.pop().expect("non-empty"));
            }
            ordinary.push(level);
        }
        let simplicial = SimplicialGroup::new(trunc, ranks, faces, ordinary)?;
        Ok(if duplicial {
            Object::Duplicial(DuplicialGroup::new(simplicial, extra)?)
        } else {
            Object::Simplicial(simplicial)
        })
    }
}

impl ChainWire {
    fn into_object(self, duchain: bool) -> Result<Object> {
        let ChainWire {
            trunc,
            ranks,
            mut d,
            delta,
            ..
        } = self;
        check_ranks(trunc, &ranks)?;
        // d[0] may be omitted
        if d.len() == trunc {
            d.insert(0, IntMatrix::zeros(0, ranks[0]));
        }
        if d.len() != trunc + 1 {
            return Err(Error::Parse(format!("d must have {} entries", trunc + 1)));
        }
        let d = d
            .into_iter()
            .enumerate()
            .map(|(n, m)| {
                let rows = if n == 0 { 0 } else { ranks[n - 1] };
                shaped(m, rows, ranks[n], || format!("d[{n}]"))
            })
            .collect::<Result<Vec<_>>>()?;
        let chain = ChainComplex::new(trunc, ranks.clone(), d)?;
        if !duchain {
            return Ok(Object::Chain(chain));
        }
        let delta = delta.ok_or_else(|| Error::Parse("duchain needs \"delta\"".into()))?;
        if delta.len() != trunc {
            return Err(Error::Parse(format!("delta must have {trunc} entries")));
        }
        let delta = delta
            .into_iter()
            .enumerate()
            .map(|(n, m)| shaped(m, ranks[n + 1], ranks[n], || format!("delta[{n}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Object::Duchain(DuchainComplex::new(chain, delta)?))
    }
}

#[derive(Serialize, Deserialize)]
struct XiMapWire {
    flavor: String,
    src: usize,
    tgt: usize,
    values: Vec<String>,
}

pub fn xi_map_to_value(f: &XiMap) -> Value {
    serde_json::to_value(XiMapWire {
        flavor: f.flavor().as_str().into(),
        src: f.src(),
        tgt: f.tgt(),
        values: f.values().iter().map(i64::to_string).collect(),
    })
    .expect("serializable")
}

pub fn xi_map_from_value(v: Value) -> Result<XiMap> {
    #[derive(Deserialize)]
    struct Loose {
        flavor: String,
        src: usize,
        tgt: usize,
        values: Vec<Value>,
    }
    let w: Loose = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    let values = w
        .values
        .iter()
        .map(|x| match x {
            Value::String(s) => s.trim().parse::<i64>().ok(),
            Value::Number(n) => n.as_i64(),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Parse("map values must be integers".into()))?;
    XiMap::new(Flavor::parse(&w.flavor)?, w.src, w.tgt, values)
}
