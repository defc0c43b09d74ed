use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{parse_rational, Rational};

/// A signature `{M_i}` with every entry in `offset + Z`.
///
/// Stored as integer parts: `left` for `i < window_start`, `values` on the
/// window, `right` past it. Validity means the integer parts are
/// non-increasing in `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    #[serde(with = "rational_str")]
    pub offset: Rational,
    pub left: i64,
    pub window_start: i64,
    pub values: Vec<i64>,
    pub right: i64,
}

/// First place where the integer parts increase: `M_index < M_{index+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureViolation {
    pub index: i64,
    pub value: i64,
    pub next_value: i64,
}

impl fmt::Display for SignatureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "M_{} = {} < M_{} = {}",
            self.index,
            self.value,
            self.index + 1,
            self.next_value
        )
    }
}

impl Signature {
    pub fn new(offset: Rational, left: i64, window_start: i64, values: Vec<i64>, right: i64) -> Self {
        Self { offset, left, window_start, values, right }
    }

    /// `M^(s)`: one for `i < s`, zero from `s` on.
    pub fn levendorskii_soibelman(s: i64) -> Self {
        Self::new(Rational::zero(), 1, s, vec![0], 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::new(Rational::zero(), c, 0, vec![c], c)
    }

    pub fn window_end(&self) -> i64 {
        self.window_start + self.values.len() as i64 - 1
    }

    /// Integer part of `M_i`.
    pub fn m(&self, i: i64) -> i64 {
        if i < self.window_start {
            self.left
        } else if i > self.window_end() {
            self.right
        } else {
            self.values[(i - self.window_start) as usize]
        }
    }

    pub fn validate(&self) -> std::result::Result<(), SignatureViolation> {
        if self.values.is_empty() {
            return if self.left >= self.right {
                Ok(())
            } else {
                Err(SignatureViolation { index: self.window_start - 1, value: self.left, next_value: self.right })
            };
        }
        for i in (self.window_start - 1)..=self.window_end() {
            let (a, b) = (self.m(i), self.m(i + 1));
            if a < b {
                return Err(SignatureViolation { index: i, value: a, next_value: b });
            }
        }
        Ok(())
    }

    pub fn checked(self) -> Result<Self> {
        self.validate().map_err(|v| Error::InvalidSignature(v.to_string()))?;
        Ok(self)
    }

    /// Parses the one-line text form; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let (line_no, line) = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l))
            .find(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .ok_or(Error::Parse { line: 1, column: 1, message: "empty signature".into() })?;
        parse_line(line_no, line)
    }
}

fn parse_line(line_no: usize, line: &str) -> Result<Signature> {
    let err = |column: usize, message: String| Error::Parse { line: line_no, column, message };
    let mut offset = None;
    let mut left = None;
    let mut window_start = None;
    let mut values = None;
    let mut right = None;

    let mut col = 1;
    for field in line.split(';') {
        let field_col = col + field.len() - field.trim_start().len();
        col += field.len() + 1;
        if field.trim().is_empty() {
            continue;
        }
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| err(field_col, format!("expected key=value, found `{}`", field.trim())))?;
        let value_col = field_col + key.trim_start().len() + 1;
        let value = value.trim();
        let int = |v: &str| v.parse::<i64>().map_err(|_| err(value_col, format!("`{v}` is not an integer")));
        match key.trim() {
            "offset" => {
                offset = Some(parse_rational(value).ok_or_else(|| err(value_col, format!("`{value}` is not a rational")))?)
            }
            "left" => left = Some(int(value)?),
            "window_start" => window_start = Some(int(value)?),
            "right" => right = Some(int(value)?),
            "values" => {
                let parsed: Result<Vec<i64>> = value.split(',').map(|v| int(v.trim())).collect();
                let parsed = parsed?;
                if parsed.is_empty() {
                    return Err(err(value_col, "values must not be empty".into()));
                }
                values = Some(parsed);
            }
            other => return Err(err(field_col, format!("unknown key `{other}`"))),
        }
    }
    let end = line.len() + 1;
    let missing = |k: &str| err(end, format!("missing `{k}`"));
    Signature::new(
        offset.ok_or_else(|| missing("offset"))?,
        left.ok_or_else(|| missing("left"))?,
        window_start.ok_or_else(|| missing("window_start"))?,
        values.ok_or_else(|| missing("values"))?,
        right.ok_or_else(|| missing("right"))?,
    )
    .checked()
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let values: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(
            f,
            "offset={}; left={}; window_start={}; values={}; right={}",
            self.offset,
            self.left,
            self.window_start,
            values.join(","),
            self.right
        )
    }
}

pub(crate) mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
    }
}
