use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Alphabet, Automaton, Label, StateId, Sym, MAX_TAPES, PAD};
use crate::error::{Error, Result};

/// On-disk form of an [`Automaton`]. Labels list one letter per tape, with
/// `"$"` for padding; transitions are sorted so that serialising a loaded
/// automaton reproduces the file byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonJson {
    pub tapes: usize,
    pub alphabet: Vec<String>,
    pub weights: Vec<u32>,
    pub states: usize,
    pub start: StateId,
    pub finals: Vec<StateId>,
    pub transitions: Vec<TransitionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionJson {
    pub from: StateId,
    pub label: Vec<String>,
    pub to: StateId,
}

impl From<&Automaton> for AutomatonJson {
    fn from(m: &Automaton) -> Self {
        let a = m.alphabet();
        AutomatonJson {
            tapes: m.tapes(),
            alphabet: a.letters().to_vec(),
            weights: a.weights().to_vec(),
            states: m.num_states(),
            start: m.start(),
            finals: m.finals().collect(),
            transitions: m
                .transitions()
                .map(|(from, l, to)| TransitionJson {
                    from,
                    label: l
                        .slots(m.tapes())
                        .iter()
                        .map(|&s| a.letter(s).to_string())
                        .collect(),
                    to,
                })
                .collect(),
        }
    }
}

impl TryFrom<AutomatonJson> for Automaton {
    type Error = Error;

    fn try_from(j: AutomatonJson) -> Result<Self> {
        if j.alphabet.len() != j.weights.len() {
            return Err(Error::AlphabetMismatch(format!(
                "{} letters but {} weights",
                j.alphabet.len(),
                j.weights.len()
            )));
        }
        if j.tapes == 0 || j.tapes > MAX_TAPES {
            return Err(Error::Unsupported(format!(
                "{} tapes (1..={MAX_TAPES} supported)",
                j.tapes
            )));
        }
        let alphabet = Alphabet::new(j.alphabet.into_iter().zip(j.weights))?;
        let mut transitions = Vec::with_capacity(j.transitions.len());
        for t in j.transitions {
            if t.label.len() != j.tapes {
                return Err(Error::TapeMismatch {
                    left: j.tapes,
                    right: t.label.len(),
                });
            }
            let slots = t
                .label
                .iter()
                .map(|s| {
                    if s == "$" {
                        Ok(PAD)
                    } else {
                        alphabet
                            .index(s)
                            .ok_or_else(|| Error::UnknownLetter(s.clone()))
                    }
                })
                .collect::<Result<Vec<Sym>>>()?;
            transitions.push((t.from, Label::new(&slots), t.to));
        }
        Automaton::from_parts(j.tapes, alphabet, j.states, j.start, j.finals, transitions)
    }
}

impl Automaton {
    /// Pretty-printed JSON serialisation.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&AutomatonJson::from(self)).expect("automaton serialises")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: AutomatonJson = serde_json::from_str(s)
            .map_err(|e| Error::parse("automaton", truncate(s), e.to_string()))?;
        j.try_into()
    }
}

fn truncate(s: &str) -> &str {
    match s.char_indices().nth(60) {
        Some((i, _)) => &s[..i],
        None => s,
    }
}

impl Serialize for Automaton {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AutomatonJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Automaton {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = AutomatonJson::deserialize(d)?;
        Automaton::try_from(j).map_err(serde::de::Error::custom)
    }
}
