//! JSON encodings of models, proofs and labelled graphs.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, ensure, Context, Result};
use lambkit_core::calculus::{Proof, Rule, RuleData};
use lambkit_core::countermodel::Candidate;
use lambkit_core::relmodel::{ConstantsMode, NSModel, RModel, Relation};
use lambkit_core::syntax::{Formula, Sequent};
use lambkit_core::unigraph::LabeledGraph;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub type Pairs = Vec<[usize; 2]>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UniverseJson {
    Named(String),
    Pairs(Pairs),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    pub n: usize,
    #[serde(rename = "U")]
    pub universe: UniverseJson,
    pub valuation: BTreeMap<String, Pairs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<Pairs>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Pairs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<Pairs>,
    /// Families default to product-closed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product_closed: Option<bool>,
}

/// A model read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadedModel {
    Relational(RModel),
    NonStandard(NSModel),
}

pub fn pairs(r: &Relation) -> Pairs {
    r.pairs().into_iter().map(|(i, j)| [i, j]).collect()
}

pub fn relation(n: usize, p: &[[usize; 2]]) -> Result<Relation> {
    let list: Vec<(usize, usize)> = p.iter().map(|[i, j]| (*i, *j)).collect();
    Relation::from_pairs(n, &list).map_err(|e| anyhow!("{}", e))
}

impl ModelJson {
    pub fn from_rmodel(m: &RModel) -> ModelJson {
        let universe = if m.is_square() {
            UniverseJson::Named("square".into())
        } else {
            UniverseJson::Pairs(pairs(&m.universe))
        };
        ModelJson {
            n: m.n(),
            universe,
            valuation: m
                .valuation
                .iter()
                .map(|(k, v)| (k.clone(), pairs(v)))
                .collect(),
            family: None,
            unit: None,
            zero: None,
            product_closed: None,
        }
    }

    pub fn from_nsmodel(m: &NSModel) -> ModelJson {
        ModelJson {
            n: m.n,
            universe: UniverseJson::Named("square".into()),
            valuation: m
                .valuation
                .iter()
                .map(|(k, v)| (k.clone(), pairs(v)))
                .collect(),
            family: Some(m.family.iter().map(pairs).collect()),
            unit: Some(pairs(&m.unit)),
            zero: Some(pairs(&m.zero)),
            product_closed: Some(m.product_closed),
        }
    }

    pub fn from_candidate(c: &Candidate) -> ModelJson {
        match c {
            Candidate::Relational(m) => ModelJson::from_rmodel(m),
            Candidate::NonStandard(m) => ModelJson::from_nsmodel(m),
        }
    }

    /// Build the model. A given unit or zero must agree with the family's.
    pub fn load(&self) -> Result<LoadedModel> {
        let n = self.n;
        ensure!(n >= 1, "a model needs at least one world");
        let mut valuation = BTreeMap::new();
        for (k, v) in &self.valuation {
            valuation.insert(
                k.clone(),
                relation(n, v).with_context(|| format!("valuation of {}", k))?,
            );
        }
        let universe = match &self.universe {
            UniverseJson::Named(s) if s == "square" => Relation::full(n),
            UniverseJson::Named(s) => bail!("unknown universe `{}`", s),
            UniverseJson::Pairs(p) => relation(n, p).context("universe")?,
        };
        let Some(family) = &self.family else {
            let constants = if universe == Relation::full(n) {
                ConstantsMode::Standard
            } else {
                ConstantsMode::Absent
            };
            let m = RModel {
                universe,
                valuation,
                constants,
            };
            let problems = m.problems();
            ensure!(problems.is_empty(), "{}", problems.join("; "));
            return Ok(LoadedModel::Relational(m));
        };
        ensure!(
            universe == Relation::full(n),
            "non-standard models are square"
        );
        let family = family
            .iter()
            .map(|p| relation(n, p))
            .collect::<Result<Vec<_>>>()
            .context("family")?;
        let m = NSModel::new(family, valuation, self.product_closed.unwrap_or(true))
            .ok_or_else(|| anyhow!("the family has no unit or no least element"))?;
        if let Some(u) = &self.unit {
            ensure!(
                relation(n, u)? == m.unit,
                "given unit is not the family unit {}",
                m.unit
            );
        }
        if let Some(z) = &self.zero {
            ensure!(
                relation(n, z)? == m.zero,
                "given zero is not the family zero {}",
                m.zero
            );
        }
        Ok(LoadedModel::NonStandard(m))
    }
}

pub fn parse_model(text: &str) -> Result<LoadedModel> {
    let m: ModelJson = serde_json::from_str(text).context("model JSON")?;
    m.load()
}

pub fn proof_to_json(p: &Proof) -> Value {
    let mut data = serde_json::Map::new();
    let RuleData {
        n,
        hypothesis,
        cut_formula,
        approximate,
    } = &p.data;
    if let Some(n) = n {
        data.insert("n".into(), json!(n));
    }
    if let Some(h) = hypothesis {
        data.insert("hypothesis".into(), json!(h));
    }
    if let Some(f) = cut_formula {
        data.insert("cut_formula".into(), json!(f.to_string()));
    }
    if *approximate {
        data.insert("approximate".into(), json!(true));
    }
    json!({
        "rule": p.rule.name(),
        "sequent": p.conclusion.to_string(),
        "premises": p.premises.iter().map(proof_to_json).collect::<Vec<_>>(),
        "data": data,
    })
}

pub fn proof_from_json(v: &Value) -> Result<Proof> {
    let rule = v["rule"].as_str().ok_or_else(|| anyhow!("missing rule"))?;
    let rule = Rule::from_name(rule).ok_or_else(|| anyhow!("unknown rule `{}`", rule))?;
    let text = v["sequent"]
        .as_str()
        .ok_or_else(|| anyhow!("missing sequent"))?;
    let conclusion: Sequent = text
        .parse()
        .with_context(|| format!("sequent `{}`", text))?;
    let premises = match &v["premises"] {
        Value::Null => Vec::new(),
        Value::Array(a) => a.iter().map(proof_from_json).collect::<Result<_>>()?,
        _ => bail!("premises must be a list"),
    };
    let d = &v["data"];
    let data = RuleData {
        n: d["n"].as_u64().map(|n| n as usize),
        hypothesis: d["hypothesis"].as_u64().map(|n| n as usize),
        cut_formula: match d["cut_formula"].as_str() {
            Some(s) => Some(
                s.parse::<Formula>()
                    .with_context(|| format!("cut formula `{}`", s))?,
            ),
            None => None,
        },
        approximate: d["approximate"].as_bool().unwrap_or(false),
    };
    Ok(Proof::node(rule, conclusion, premises).with_data(data))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub stage: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    pub fn from_graph(g: &LabeledGraph) -> GraphJson {
        GraphJson {
            stage: g.stage,
            vertices: (0..g.vertices).collect(),
            edges: g
                .edges
                .iter()
                .map(|(&(from, to), f)| EdgeJson {
                    from,
                    to,
                    label: f.to_string(),
                })
                .collect(),
        }
    }

    /// Vertices must be `0..k`.
    pub fn to_graph(&self) -> Result<LabeledGraph> {
        let k = self.vertices.len();
        ensure!(
            self.vertices.iter().copied().eq(0..k),
            "vertices must be numbered 0..{}",
            k
        );
        let mut edges = BTreeMap::new();
        for e in &self.edges {
            ensure!(
                e.from < k && e.to < k,
                "edge {} -> {} leaves the vertex set",
                e.from,
                e.to
            );
            let f: Formula = e
                .label
                .parse()
                .with_context(|| format!("label `{}`", e.label))?;
            ensure!(
                edges.insert((e.from, e.to), f).is_none(),
                "duplicate edge {} -> {}",
                e.from,
                e.to
            );
        }
        Ok(LabeledGraph {
            vertices: k,
            edges,
            stage: self.stage,
        })
    }
}
