//! `--model name[:key=value,...]` grammar.

use std::collections::BTreeMap;

use thresholdlab::measures::{mu_p, mu_p1p2, StepLinearCdf, UpperSet};
use thresholdlab::real_dist::{weight_limit, RealCdf};
use thresholdlab::samplers::{BlockLaw, ModelSpec};

use crate::Usage;

pub const MODEL_HELP: &str = "\
models (n from --n, parts from --n1/--n2):
  uniform-unlabeled | uniform-labeled | blocks-unlabeled | blocks-labeled
  attachment:p=P | attachment-shuffled:p=P
  weights:dist=D[,t=T]      D = uniform[,a=,b=] | normal[,mean=,sd=] | two-level,p=P
  fixed-weights:w=W1/W2/...,t=T
  upper-set[:p=P | :p1=P1,p2=P2]  (no parameters: the triangle x+y >= 1)
  bip-attachment:p1=P1,p2=P2 | bip-uniform
  bip-weights:dist=D[,t=T]  (the same law on both parts)
  bip-upper-set[:p1=P1,p2=P2]";

/// Parsed model with the inputs needed to describe its limit.
pub struct Model {
    pub spec: ModelSpec,
    pub name: String,
    params: BTreeMap<String, String>,
}

struct Params {
    map: BTreeMap<String, String>,
    used: Vec<String>,
}

impl Params {
    fn parse(s: &str) -> Result<Self, Usage> {
        let mut map = BTreeMap::new();
        for part in s.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Usage(format!("model parameter '{part}' is not key=value")))?;
            if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(Usage(format!("model parameter '{k}' given twice")));
            }
        }
        Ok(Params { map, used: Vec::new() })
    }

    fn has(&self, k: &str) -> bool {
        self.map.contains_key(k)
    }

    fn raw(&mut self, k: &str) -> Option<String> {
        self.used.push(k.to_string());
        self.map.get(k).cloned()
    }

    fn num(&mut self, k: &str) -> Result<Option<f64>, Usage> {
        match self.raw(k) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(Some)
                .ok_or_else(|| Usage(format!("model parameter {k}={v} is not a number"))),
        }
    }

    fn req(&mut self, k: &str) -> Result<f64, Usage> {
        self.num(k)?
            .ok_or_else(|| Usage(format!("model needs parameter {k}=")))
    }

    fn finish(&self) -> Result<(), Usage> {
        for k in self.map.keys() {
            if !self.used.contains(k) {
                return Err(Usage(format!("unknown model parameter '{k}'")));
            }
        }
        Ok(())
    }
}

fn dist(p: &mut Params) -> Result<RealCdf, Usage> {
    let d = p
        .raw("dist")
        .ok_or_else(|| Usage("weights model needs dist=uniform|normal|two-level".into()))?;
    Ok(match d.as_str() {
        "uniform" => RealCdf::Uniform {
            a: p.num("a")?.unwrap_or(0.0),
            b: p.num("b")?.unwrap_or(1.0),
        },
        "normal" => RealCdf::Normal {
            mean: p.num("mean")?.unwrap_or(0.0),
            sd: p.num("sd")?.unwrap_or(1.0),
        },
        "two-level" => RealCdf::TwoLevel { p: p.req("p")? },
        other => return Err(Usage(format!("unknown weight distribution '{other}'"))),
    })
}

fn need(v: Option<usize>, flag: &str, model: &str) -> Result<usize, Usage> {
    v.ok_or_else(|| Usage(format!("model {model} needs {flag}")))
}

fn set_from(p: &mut Params) -> Result<UpperSet, Usage> {
    let domain = |e: thresholdlab::Error| Usage(e.to_string());
    if p.has("p") {
        let x = p.req("p")?;
        return Ok(mu_p(x).map_err(domain)?.upper_set());
    }
    if p.has("p1") || p.has("p2") {
        let (a, b) = (p.req("p1")?, p.req("p2")?);
        return Ok(mu_p1p2(a, b).map_err(domain)?.upper_set());
    }
    Ok(UpperSet::triangle())
}

pub fn parse(
    text: &str,
    n: Option<usize>,
    n1: Option<usize>,
    n2: Option<usize>,
) -> Result<Model, Usage> {
    let (name, rest) = text.split_once(':').unwrap_or((text, ""));
    let mut p = Params::parse(rest)?;
    let one = |label: &str| need(n, "--n", label);
    let two = |label: &str| -> Result<(usize, usize), Usage> {
        Ok((need(n1, "--n1", label)?, need(n2, "--n2", label)?))
    };
    let spec = match name {
        "uniform-unlabeled" => ModelSpec::UniformUnlabeled { n: one(name)? },
        "uniform-labeled" => ModelSpec::UniformLabeled { n: one(name)? },
        "blocks-unlabeled" => ModelSpec::Blocks { law: BlockLaw::Unlabeled, n: one(name)? },
        "blocks-labeled" => ModelSpec::Blocks { law: BlockLaw::Labeled, n: one(name)? },
        "attachment" => ModelSpec::Attachment { n: one(name)?, p: p.req("p")? },
        "attachment-shuffled" => ModelSpec::AttachmentShuffled { n: one(name)?, p: p.req("p")? },
        "weights" => ModelSpec::Weights {
            n: one(name)?,
            dist: dist(&mut p)?,
            t: p.num("t")?.unwrap_or(0.0),
        },
        "fixed-weights" => {
            let w = p
                .raw("w")
                .ok_or_else(|| Usage("fixed-weights needs w=W1/W2/...".into()))?;
            let weights = w
                .split('/')
                .map(|x| x.trim().parse::<f64>().map_err(|_| Usage(format!("bad weight '{x}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(n) = n {
                if n != weights.len() {
                    return Err(Usage(format!("--n {n} but {} weights given", weights.len())));
                }
            }
            ModelSpec::FixedWeights { weights, t: p.num("t")?.unwrap_or(0.0) }
        }
        "upper-set" => ModelSpec::UpperSetModel { n: one(name)?, set: set_from(&mut p)? },
        "bip-attachment" => {
            let (n1, n2) = two(name)?;
            ModelSpec::BipAttachment { n1, n2, p1: p.req("p1")?, p2: p.req("p2")? }
        }
        "bip-uniform" => {
            let (n1, n2) = two(name)?;
            ModelSpec::BipUniform { n1, n2 }
        }
        "bip-weights" => {
            let (n1, n2) = two(name)?;
            let d = dist(&mut p)?;
            ModelSpec::BipWeights { n1, n2, fx: d.clone(), fy: d, t: p.num("t")?.unwrap_or(0.0) }
        }
        "bip-upper-set" => {
            let (n1, n2) = two(name)?;
            ModelSpec::BipUpperSet { n1, n2, set: set_from(&mut p)? }
        }
        other => return Err(Usage(format!("unknown model '{other}'\n{MODEL_HELP}"))),
    };
    p.finish()?;
    spec.validate().map_err(|e| Usage(e.to_string()))?;
    Ok(Model { spec, name: name.to_string(), params: p.map })
}

impl Model {
    /// Limit of the (first-part) degree distribution, where one is known.
    pub fn limit(&self) -> anyhow::Result<StepLinearCdf> {
        let get = |k: &str| self.params.get(k).and_then(|v| v.parse::<f64>().ok());
        Ok(match &self.spec {
            ModelSpec::UniformUnlabeled { .. }
            | ModelSpec::UniformLabeled { .. }
            | ModelSpec::Blocks { .. }
            | ModelSpec::BipUniform { .. } => StepLinearCdf::uniform(),
            ModelSpec::Attachment { p, .. } | ModelSpec::AttachmentShuffled { p, .. } => mu_p(*p)?,
            ModelSpec::Weights { dist, t, .. } => weight_limit(dist, *t)?,
            ModelSpec::UpperSetModel { set, .. } => set.to_measure()?,
            ModelSpec::BipAttachment { p1, p2, .. } => mu_p1p2(*p1, *p2)?,
            ModelSpec::BipUpperSet { .. } => match (get("p1"), get("p2")) {
                (Some(a), Some(b)) => mu_p1p2(a, b)?,
                _ => StepLinearCdf::uniform(),
            },
            ModelSpec::FixedWeights { .. } | ModelSpec::BipWeights { .. } => {
                return Err(thresholdlab::Error::Unsupported(format!(
                    "no limit measure is available for model {}",
                    self.name
                ))
                .into())
            }
        })
    }
}
