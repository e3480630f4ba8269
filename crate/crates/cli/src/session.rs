//! Session specs: declared algebras and the state pair on each.
//!
//! Two equivalent formats are accepted. The line-oriented text format:
//!
//! ```text
//! # comment
//! algebra 1 gens a c degree 4 [hermitian]
//! phi 1: a = 1/2
//! phi 1: a c* = -3
//! psi 1 = point          # or `phi`, or `random SEED`
//! ```
//!
//! and the JSON format:
//!
//! ```json
//! {"algebras": [{"id": 1, "gens": ["a", "c"], "degree": 4,
//!   "phi": {"moments": {"a": "1/2", "a c*": "-3"}}, "psi": "point"}]}
//! ```

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use mfree_core::scalar;
use mfree_core::states::random::SeededState;
use mfree_core::states::{MomentTable, State, StatePair};
use mfree_core::{AlgebraId, FpWord, Generator, Scalar, Word};
use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::word::{check_symbol, parse_letters, RawLetter};

#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Moments(Vec<(Word, Scalar)>),
    /// 1 on the unit, 0 on every other word.
    Point,
    /// Only for `psi`: the same state as `phi`.
    Phi,
    Random(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec {
    pub id: u32,
    pub gens: Vec<String>,
    pub degree: usize,
    pub hermitian: bool,
    pub phi: StateSpec,
    pub psi: StateSpec,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SessionSpec {
    algebras: Vec<AlgebraSpec>,
}

impl SessionSpec {
    pub fn new(mut algebras: Vec<AlgebraSpec>) -> Result<Self> {
        algebras.sort_by_key(|a| a.id);
        if let Some(w) = algebras.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(CliError::Spec(format!("algebra {} is declared twice", w[0].id)));
        }
        if algebras.is_empty() {
            return Err(CliError::Spec("no algebra declared".into()));
        }
        for a in &algebras {
            if a.id == 0 {
                return Err(CliError::Spec("algebra ids start at 1".into()));
            }
            if a.phi == StateSpec::Phi {
                return Err(CliError::Spec(format!("phi of algebra {} cannot refer to itself", a.id)));
            }
            for g in &a.gens {
                check_symbol(g).map_err(CliError::Spec)?;
            }
        }
        Ok(SessionSpec { algebras })
    }

    /// Reads a spec file; `.json` files and files starting with `{` use the
    /// JSON format.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        let name = path.display().to_string();
        if path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{') {
            Self::from_json(&text, &name)
        } else {
            Self::from_text(&text, &name)
        }
    }

    pub fn algebras(&self) -> &[AlgebraSpec] {
        &self.algebras
    }

    pub fn algebra(&self, id: u32) -> Result<&AlgebraSpec> {
        self.algebras.iter().find(|a| a.id == id).ok_or(CliError::UndeclaredAlgebra(id))
    }

    /// The state pairs, in algebra order.
    pub fn pairs(&self) -> Result<Vec<StatePair>> {
        self.algebras
            .iter()
            .map(|a| {
                let phi = build_state(a, &a.phi)?;
                let psi = match &a.psi {
                    StateSpec::Phi => phi.clone(),
                    other => build_state(a, other)?,
                };
                Ok(StatePair::new(phi, psi)?)
            })
            .collect()
    }

    pub fn resolve(&self, letter: &RawLetter) -> Result<Generator> {
        let declares = |a: &&AlgebraSpec| a.gens.contains(&letter.symbol);
        let id = match letter.algebra {
            Some(k) => {
                let a = self.algebra(k)?;
                if !declares(&a) {
                    return Err(CliError::UndeclaredSymbol(format!("{}@{k}", letter.symbol)));
                }
                k
            }
            None => {
                let mut found = self.algebras.iter().filter(declares);
                match (found.next(), found.next()) {
                    (Some(a), None) => a.id,
                    (None, _) => return Err(CliError::UndeclaredSymbol(letter.symbol.clone())),
                    (Some(_), Some(_)) => return Err(CliError::AmbiguousSymbol(letter.symbol.clone())),
                }
            }
        };
        let g = Generator::new(id, &letter.symbol);
        Ok(if letter.starred { g.star() } else { g })
    }

    /// Parses a word expression against the declared generators.
    pub fn parse_word(&self, text: &str) -> Result<FpWord> {
        let letters = parse_letters(text, "word", 1, 0)?;
        let gens = letters.iter().map(|l| self.resolve(l)).collect::<Result<Vec<_>>>()?;
        Ok(FpWord::from_letters(gens))
    }

    /// Every moment needed for `u` has at most as many letters of an
    /// algebra as `u` itself; that count must not exceed the declared degree.
    pub fn check_degree(&self, u: &FpWord) -> Result<()> {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for g in u.letters() {
            *counts.entry(g.algebra.0).or_default() += 1;
        }
        for (id, needed) in counts {
            let a = self.algebra(id)?;
            if needed > a.degree {
                return Err(CliError::DegreeTooLow { algebra: id, degree: a.degree, needed });
            }
        }
        Ok(())
    }

    pub fn from_text(text: &str, name: &str) -> Result<Self> {
        let mut order: Vec<u32> = Vec::new();
        let mut pending: HashMap<u32, Pending> = HashMap::new();
        for (index, raw) in text.lines().enumerate() {
            let line_no = index + 1;
            let line = raw.split('#').next().unwrap_or("");
            let tokens = tokenize(line);
            let Some(&(col, head)) = tokens.first() else { continue };
            let fail = |column: usize, msg: String| CliError::parse(name, line_no, column, msg);
            match head {
                "algebra" => {
                    let (id, spec) = parse_algebra_line(&tokens).map_err(|(c, m)| fail(c, m))?;
                    if pending.contains_key(&id) {
                        return Err(fail(col, format!("algebra {id} is declared twice")));
                    }
                    order.push(id);
                    pending.insert(id, spec);
                }
                "phi" | "psi" => {
                    let which_phi = head == "phi";
                    let (id_col, id_tok) =
                        *tokens.get(1).ok_or_else(|| fail(col, format!("expected an algebra id after `{head}`")))?;
                    let (id_text, entry) = match id_tok.strip_suffix(':') {
                        Some(s) => (s, true),
                        None => (id_tok, false),
                    };
                    let id: u32 = id_text.parse().map_err(|_| fail(id_col, format!("bad algebra id `{id_text}`")))?;
                    let spec = pending
                        .get_mut(&id)
                        .ok_or_else(|| fail(id_col, format!("algebra {id} must be declared before its states")))?;
                    let slot = if which_phi { &mut spec.phi } else { &mut spec.psi };
                    if entry {
                        let rest_col = tokens.get(2).map_or(line.len(), |t| t.0 - 1);
                        let rest = byte_at_column(line, rest_col);
                        let (word_text, value_text) = line[rest..]
                            .rsplit_once('=')
                            .ok_or_else(|| fail(rest_col + 1, "expected `WORD = VALUE`".into()))?;
                        let value = scalar::parse(value_text).ok_or_else(|| {
                            fail(
                                rest_col
                                    + word_text.chars().count()
                                    + value_text.chars().take_while(|c| c.is_whitespace()).count()
                                    + 2,
                                format!("`{}` is not an exact rational", value_text.trim()),
                            )
                        })?;
                        let letters = parse_letters(word_text, name, line_no, rest_col)?;
                        let word = entry_word(id, &spec.gens, &letters).map_err(|(c, m)| fail(c, m))?;
                        let slot = if which_phi { &mut spec.phi } else { &mut spec.psi };
                        match slot {
                            None => *slot = Some(StateSpec::Moments(vec![(word, value)])),
                            Some(StateSpec::Moments(entries)) => entries.push((word, value)),
                            Some(_) => {
                                return Err(fail(col, format!("{head} {id} is already defined as a whole state")))
                            }
                        }
                    } else {
                        if tokens.get(2).map(|t| t.1) != Some("=") {
                            return Err(fail(
                                id_col,
                                format!("expected `{head} {id}: WORD = VALUE` or `{head} {id} = STATE`"),
                            ));
                        }
                        let rest: Vec<&str> = tokens[3..].iter().map(|t| t.1).collect();
                        let state = match rest.as_slice() {
                            ["point"] => StateSpec::Point,
                            ["phi"] if !which_phi => StateSpec::Phi,
                            ["random", seed] => StateSpec::Random(
                                seed.parse().map_err(|_| fail(tokens[4].0, format!("bad seed `{seed}`")))?,
                            ),
                            _ => {
                                let c = tokens.get(3).map_or(col, |t| t.0);
                                let allowed = if which_phi {
                                    "`point` or `random SEED`"
                                } else {
                                    "`point`, `phi` or `random SEED`"
                                };
                                return Err(fail(c, format!("expected {allowed}")));
                            }
                        };
                        if slot.is_some() {
                            return Err(fail(col, format!("{head} {id} is defined twice")));
                        }
                        *slot = Some(state);
                    }
                }
                other => return Err(fail(col, format!("unknown directive `{other}`"))),
            }
        }
        let algebras = order
            .into_iter()
            .map(|id| pending.remove(&id).expect("recorded").finish(id))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebras)
    }

    pub fn from_json(text: &str, name: &str) -> Result<Self> {
        let doc: JsonSpec =
            serde_json::from_str(text).map_err(|e| CliError::parse(name, e.line(), e.column(), e.to_string()))?;
        let algebras = doc
            .algebras
            .into_iter()
            .map(|a| {
                let state = |s: JsonState, which: &str| -> Result<StateSpec> {
                    Ok(match s {
                        JsonState::Named(n) if n == "point" => StateSpec::Point,
                        JsonState::Named(n) if n == "phi" => StateSpec::Phi,
                        JsonState::Named(n) => {
                            return Err(CliError::Spec(format!("algebra {}: unknown {which} state `{n}`", a.id)))
                        }
                        JsonState::Random { random } => StateSpec::Random(random),
                        JsonState::Moments { moments } => {
                            let context = format!("{name} (algebra {} {which})", a.id);
                            let entries = moments
                                .iter()
                                .map(|(k, v)| {
                                    let value = scalar::parse(v).ok_or_else(|| {
                                        CliError::Spec(format!("{context}: `{v}` is not an exact rational"))
                                    })?;
                                    let letters = parse_letters(k, &context, 1, 0)?;
                                    let word = entry_word(a.id, &a.gens, &letters)
                                        .map_err(|(c, m)| CliError::parse(&context, 1, c, m))?;
                                    Ok((word, value))
                                })
                                .collect::<Result<Vec<_>>>()?;
                            StateSpec::Moments(entries)
                        }
                    })
                };
                Ok(AlgebraSpec {
                    id: a.id,
                    phi: state(a.phi.clone(), "phi")?,
                    psi: state(a.psi.clone(), "psi")?,
                    gens: a.gens,
                    degree: a.degree,
                    hermitian: a.hermitian,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebras)
    }
}

fn build_state(a: &AlgebraSpec, s: &StateSpec) -> Result<State> {
    let id = AlgebraId(a.id);
    Ok(match s {
        StateSpec::Point => State::point(id),
        StateSpec::Random(seed) => State::Seeded(SeededState::new(id, *seed, a.degree, a.hermitian)),
        StateSpec::Moments(entries) => MomentTable::new(id, a.degree, entries.iter().cloned(), a.hermitian)?.into(),
        StateSpec::Phi => unreachable!("resolved by the caller"),
    })
}

struct Pending {
    gens: Vec<String>,
    degree: usize,
    hermitian: bool,
    phi: Option<StateSpec>,
    psi: Option<StateSpec>,
}

impl Pending {
    fn finish(self, id: u32) -> Result<AlgebraSpec> {
        let missing = |which: &str| CliError::Spec(format!("{which} of algebra {id} is not declared"));
        Ok(AlgebraSpec {
            id,
            gens: self.gens,
            degree: self.degree,
            hermitian: self.hermitian,
            phi: self.phi.ok_or_else(|| missing("phi"))?,
            psi: self.psi.ok_or_else(|| missing("psi"))?,
        })
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn byte_at_column(line: &str, chars: usize) -> usize {
    line.char_indices().nth(chars).map_or(line.len(), |(i, _)| i)
}

type LineError = (usize, String);

fn parse_algebra_line(tokens: &[(usize, &str)]) -> std::result::Result<(u32, Pending), LineError> {
    let (id_col, id_tok) = *tokens.get(1).ok_or((tokens[0].0, "expected an algebra id".to_string()))?;
    let id: u32 = id_tok.parse().ok().filter(|&k| k > 0).ok_or((id_col, format!("bad algebra id `{id_tok}`")))?;
    if tokens.get(2).map(|t| t.1) != Some("gens") {
        return Err((tokens.get(2).map_or(id_col, |t| t.0), "expected `gens`".into()));
    }
    let mut gens = Vec::new();
    let mut i = 3;
    while i < tokens.len() && tokens[i].1 != "degree" {
        let (c, g) = tokens[i];
        check_symbol(g).map_err(|m| (c, m))?;
        if gens.iter().any(|x| x == g) {
            return Err((c, format!("generator `{g}` is listed twice")));
        }
        gens.push(g.to_owned());
        i += 1;
    }
    if gens.is_empty() {
        return Err((tokens.get(i).map_or(id_col, |t| t.0), "expected at least one generator".into()));
    }
    let last = tokens.last().map_or(id_col, |t| t.0);
    let (deg_col, deg_tok) = *tokens.get(i + 1).ok_or((last, "expected `degree D`".to_string()))?;
    let degree: usize = deg_tok.parse().map_err(|_| (deg_col, format!("bad degree `{deg_tok}`")))?;
    let hermitian = match tokens.get(i + 2) {
        None => false,
        Some((_, "hermitian")) if tokens.len() == i + 3 => true,
        Some(&(c, t)) => return Err((c, format!("unexpected `{t}`"))),
    };
    Ok((id, Pending { gens, degree, hermitian, phi: None, psi: None }))
}

/// A moment-table key: letters from the algebra's own generators.
fn entry_word(id: u32, gens: &[String], letters: &[RawLetter]) -> std::result::Result<Word, LineError> {
    letters
        .iter()
        .map(|l| {
            if l.algebra.is_some_and(|k| k != id) {
                return Err((
                    l.column,
                    format!("letter belongs to algebra {} in a table for algebra {id}", l.algebra.unwrap()),
                ));
            }
            if !gens.contains(&l.symbol) {
                return Err((l.column, format!("`{}` is not a generator of algebra {id}", l.symbol)));
            }
            let g = Generator::new(id, &l.symbol);
            Ok(if l.starred { g.star() } else { g })
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(Word::new)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonSpec {
    algebras: Vec<JsonAlgebra>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonAlgebra {
    id: u32,
    gens: Vec<String>,
    degree: usize,
    #[serde(default)]
    hermitian: bool,
    phi: JsonState,
    psi: JsonState,
}

#[derive(Deserialize, Clone)]
#[serde(untagged)]
enum JsonState {
    Named(String),
    Random { random: u64 },
    Moments { moments: BTreeMap<String, String> },
}
