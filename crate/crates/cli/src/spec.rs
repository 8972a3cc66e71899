//! Problem specifications: a JSON file and command-line flags, merged with
//! flags taking precedence.

use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;
use twistcube_core::{Error, Family, Result, RootDatum, Weight, Word, WordMult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Off,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            "off" => Ok(Format::Off),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

/// Raw fields, all optional until merged.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub family: Option<String>,
    pub rank: Option<usize>,
    pub word: Option<Vec<usize>>,
    pub mult: Option<Vec<i64>>,
    pub weight: Option<Vec<i64>>,
    pub dilates: Option<i64>,
    pub denominator: Option<i64>,
    pub format: Option<String>,
}

impl SpecFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    /// Fields set in `flags` replace those of `self`. Giving `mult` drops a
    /// file `weight` and vice versa.
    pub fn overridden_by(mut self, flags: SpecFile) -> Self {
        if flags.mult.is_some() {
            self.weight = None;
        }
        if flags.weight.is_some() {
            self.mult = None;
        }
        macro_rules! take {
            ($($f:ident),*) => { $( if flags.$f.is_some() { self.$f = flags.$f; } )* };
        }
        take!(
            family,
            rank,
            word,
            mult,
            weight,
            dilates,
            denominator,
            format
        );
        self
    }
}

#[derive(Debug, Clone)]
pub enum Data {
    Mult(Vec<i64>),
    Weight(Weight),
}

#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub datum: RootDatum,
    pub word: Word,
    pub data: Option<Data>,
    pub dilates: i64,
    pub denominator: i64,
    pub format: Option<Format>,
    pub cap: u128,
}

impl ProblemSpec {
    pub fn from_fields(f: SpecFile) -> Result<Self> {
        let family: Family = f
            .family
            .as_deref()
            .ok_or_else(|| Error::Parse("missing family".into()))?
            .parse()?;
        let rank = f.rank.ok_or_else(|| Error::Parse("missing rank".into()))?;
        let datum = RootDatum::new(family, rank)?;
        let word = Word::new(f.word.unwrap_or_default());
        datum.check_word(&word)?;
        let data = match (f.mult, f.weight) {
            (Some(_), Some(_)) => {
                return Err(Error::Parse("give either mult or weight, not both".into()))
            }
            (Some(m), None) => {
                if m.len() != word.len() {
                    return Err(Error::DimensionMismatch {
                        expected: word.len(),
                        got: m.len(),
                    });
                }
                if m.iter().any(|&v| v < 0) {
                    return Err(Error::Domain("mult entries must be >= 0".into()));
                }
                Some(Data::Mult(m))
            }
            (None, Some(w)) => {
                if w.len() != rank {
                    return Err(Error::DimensionMismatch {
                        expected: rank,
                        got: w.len(),
                    });
                }
                let w = Weight::new(w);
                if !w.is_dominant() {
                    return Err(Error::Domain("weight entries must be >= 0".into()));
                }
                Some(Data::Weight(w))
            }
            (None, None) => None,
        };
        let dilates = f.dilates.unwrap_or(3);
        let denominator = f.denominator.unwrap_or(2);
        if dilates < 1 || denominator < 1 {
            return Err(Error::Domain("dilates and denominator must be >= 1".into()));
        }
        let format = f.format.as_deref().map(str::parse).transpose()?;
        Ok(ProblemSpec {
            datum,
            word,
            data,
            dilates,
            denominator,
            format,
            cap: twistcube_core::polyhedra::DEFAULT_LATTICE_CAP,
        })
    }

    pub fn weight(&self) -> Result<&Weight> {
        match &self.data {
            Some(Data::Weight(w)) => Ok(w),
            _ => Err(Error::Parse("this command needs --weight".into())),
        }
    }

    /// The multiplicity list: `mult` as given, or `m(lambda)` from `weight`.
    pub fn mult(&self) -> Result<Vec<i64>> {
        match &self.data {
            Some(Data::Mult(m)) => Ok(m.clone()),
            Some(Data::Weight(w)) => twistcube_core::m_of_lambda(&self.datum, &self.word, w),
            None => Err(Error::Parse("need --mult or --weight".into())),
        }
    }

    pub fn word_mult(&self) -> Result<WordMult> {
        WordMult::new(self.datum.clone(), self.word.clone(), self.mult()?)
    }

    pub fn input_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "family": self.datum.family().to_string(),
            "rank": self.datum.rank(),
            "word": self.word.letters(),
        });
        match &self.data {
            Some(Data::Mult(m)) => v["mult"] = serde_json::json!(m),
            Some(Data::Weight(w)) => v["weight"] = serde_json::json!(w.coords),
            None => {}
        }
        v
    }
}

/// `1,2,1`, `(1,2,1)` or `[1, 2, 1]`.
pub fn parse_list<T: FromStr>(s: &str) -> std::result::Result<Vec<T>, String> {
    let inner = s
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| format!("cannot parse {:?} in list {s:?}", t.trim()))
        })
        .collect()
}
