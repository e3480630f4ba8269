//! Independence models and the `eval` / `converge` commands.

use std::fmt;
use std::str::FromStr;

use mfree_core::bialgebra::{cfree_convolve, Bialgebra, Mode};
use mfree_core::mfree::MContext;
use mfree_core::states::{boolean_product_eval, cfree_word, free_eval, State, StatePair};
use mfree_core::{AlgebraId, FpWord, Scalar, Word};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::session::SessionSpec;

/// Variant order is the output order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Model {
    Boolean,
    Free,
    Cfree,
    Mfree(usize),
    Convolve(usize),
}

impl Model {
    pub fn label(&self) -> &'static str {
        match self {
            Model::Boolean => "boolean",
            Model::Free => "free",
            Model::Cfree => "cfree",
            Model::Mfree(_) => "mfree",
            Model::Convolve(_) => "convolve",
        }
    }

    pub fn level(&self) -> Option<usize> {
        match self {
            Model::Mfree(m) | Model::Convolve(m) => Some(*m),
            _ => None,
        }
    }

    /// Parses `NAME` or `NAME:M`; `default_m` fills a missing level.
    pub fn parse(text: &str, default_m: Option<usize>) -> Result<Model> {
        let (name, level) = match text.split_once(':') {
            Some((n, m)) => {
                let m = m.parse().ok().filter(|&m| m > 0).ok_or_else(|| {
                    CliError::Usage(format!("bad level in model `{text}`; expected a positive integer"))
                })?;
                (n, Some(m))
            }
            None => (text, None),
        };
        let need_level = |ctor: fn(usize) -> Model| {
            level
                .or(default_m)
                .map(ctor)
                .ok_or_else(|| CliError::Usage(format!("model `{name}` needs a level: write `{name}:M` or pass --m")))
        };
        let plain = |m: Model| match level {
            Some(_) => Err(CliError::Usage(format!("model `{name}` takes no level"))),
            None => Ok(m),
        };
        match name {
            "boolean" => plain(Model::Boolean),
            "free" => plain(Model::Free),
            "cfree" => plain(Model::Cfree),
            "mfree" => need_level(Model::Mfree),
            "convolve" => need_level(Model::Convolve),
            _ => Err(CliError::Usage(format!(
                "unknown model `{name}`; expected boolean, free, cfree, mfree:M or convolve:M"
            ))),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level() {
            Some(m) => write!(f, "{}:{m}", self.label()),
            None => f.write_str(self.label()),
        }
    }
}

impl FromStr for Model {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Model> {
        Model::parse(s, None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultRow {
    pub word: String,
    pub model: String,
    pub m: Option<usize>,
    pub value: String,
    pub stabilized: Option<bool>,
}

/// A loaded session: the spec and its state pairs.
pub struct Session {
    pub spec: SessionSpec,
    pub pairs: Vec<StatePair>,
}

impl Session {
    pub fn new(spec: SessionSpec) -> Result<Self> {
        let pairs = spec.pairs()?;
        Ok(Session { spec, pairs })
    }

    fn phis(&self) -> Vec<State> {
        self.pairs.iter().map(|p| p.phi.clone()).collect()
    }

    pub fn evaluate(&self, u: &FpWord, model: Model) -> Result<Scalar> {
        Ok(match model {
            Model::Boolean => boolean_product_eval(&self.phis(), u)?,
            Model::Free => free_eval(&self.phis(), u)?,
            Model::Cfree => cfree_word(&self.pairs, u)?,
            Model::Mfree(m) => MContext::new(m, self.pairs.clone())?.mfree_eval(u)?,
            Model::Convolve(m) => {
                let (w, pairs) = self.convolution_input(u)?;
                Bialgebra::new(m, Mode::Bialgebra)?.convolve(&pairs, &w)?
            }
        })
    }

    /// The target the `convolve:M` values stabilize at.
    pub fn cfree_convolve(&self, u: &FpWord) -> Result<Scalar> {
        let (w, pairs) = self.convolution_input(u)?;
        Ok(cfree_convolve(&pairs, &w)?)
    }

    /// Convolution acts on a single-algebra word; every declared pair is
    /// transported onto that algebra, in algebra order.
    fn convolution_input(&self, u: &FpWord) -> Result<(Word, Vec<StatePair>)> {
        let w = match u.blocks() {
            [] => Word::unit(),
            [w] => w.clone(),
            _ => return Err(CliError::Usage("convolution needs a word from a single algebra".into())),
        };
        let target = w.algebra().unwrap_or(AlgebraId(self.spec.algebras()[0].id));
        for a in self.spec.algebras() {
            if let Some(g) = w.letters().iter().find(|g| !a.gens.iter().any(|s| s == g.symbol.as_str())) {
                return Err(CliError::Spec(format!(
                    "convolution transports every state onto algebra {target}, but algebra {} does not declare `{}`",
                    a.id, g.symbol
                )));
            }
            if w.len() > a.degree {
                return Err(CliError::DegreeTooLow { algebra: a.id, degree: a.degree, needed: w.len() });
            }
        }
        Ok((w, self.pairs.iter().map(|p| p.retag(target)).collect()))
    }
}

/// One row per model, sorted by model and then level.
pub fn cmd_eval(session: &Session, word: &str, models: &[Model]) -> Result<Vec<ResultRow>> {
    let u = session.spec.parse_word(word)?;
    session.spec.check_degree(&u)?;
    let mut models = models.to_vec();
    models.sort();
    models.dedup();
    models
        .iter()
        .map(|&model| {
            Ok(ResultRow {
                word: u.to_string(),
                model: model.label().to_owned(),
                m: model.level(),
                value: session.evaluate(&u, model)?.to_string(),
                stabilized: None,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Mfree,
    Convolve,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convergence {
    pub word: String,
    pub target: String,
    /// Smallest `m` from which every computed level equals the target.
    pub stable_from: Option<usize>,
    pub rows: Vec<ResultRow>,
}

/// Rows for `m = 1..=m_max` and a final row with the limit.
pub fn cmd_converge(session: &Session, word: &str, family: Family, m_max: usize) -> Result<Convergence> {
    if m_max == 0 {
        return Err(CliError::Usage("--m-max must be at least 1".into()));
    }
    let u = session.spec.parse_word(word)?;
    session.spec.check_degree(&u)?;
    let (target, target_label) = match family {
        Family::Mfree => (session.evaluate(&u, Model::Cfree)?, "cfree"),
        Family::Convolve => (session.cfree_convolve(&u)?, "cfree-convolve"),
    };
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let model = match family {
            Family::Mfree => Model::Mfree(m),
            Family::Convolve => Model::Convolve(m),
        };
        let value = session.evaluate(&u, model)?;
        rows.push(ResultRow {
            word: u.to_string(),
            model: model.label().to_owned(),
            m: Some(m),
            stabilized: Some(value == target),
            value: value.to_string(),
        });
    }
    let stable_from =
        rows.iter().rposition(|r| r.stabilized != Some(true)).map_or(Some(1), |i| (i + 1 < m_max).then_some(i + 2));
    rows.push(ResultRow {
        word: u.to_string(),
        model: target_label.to_owned(),
        m: None,
        value: target.to_string(),
        stabilized: None,
    });
    Ok(Convergence { word: u.to_string(), target: target.to_string(), stable_from, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_names() {
        assert_eq!("mfree:3".parse::<Model>().unwrap(), Model::Mfree(3));
        assert_eq!(Model::parse("convolve", Some(2)).unwrap(), Model::Convolve(2));
        assert!(Model::parse("mfree", None).is_err());
        assert!(Model::parse("cfree:2", None).is_err());
        assert!(Model::parse("mfree:0", None).is_err());
        assert!(Model::parse("tensor", None).is_err());
        let mut ms = [Model::Mfree(3), Model::Cfree, Model::Convolve(1), Model::Mfree(1), Model::Boolean];
        ms.sort();
        let names: Vec<String> = ms.iter().map(Model::to_string).collect();
        assert_eq!(names, ["boolean", "cfree", "mfree:1", "mfree:3", "convolve:1"]);
    }
}
