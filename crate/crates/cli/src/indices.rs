//! Index lists such as `5`, `0..=20`, `0..20`, `50..=300:10` or `1,4,9`.

use std::fmt;
use std::str::FromStr;

/// A strictly increasing list of indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexList(Vec<u64>);

impl IndexList {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// The single index, or an error naming `flag` if there are several.
    pub fn single(&self, flag: &str) -> Result<u64, String> {
        match self.0.as_slice() {
            [one] => Ok(*one),
            _ => Err(format!("--{flag} takes a single index here, got {self}")),
        }
    }
}

fn number(s: &str) -> Result<u64, String> {
    s.trim().parse().map_err(|_| format!("invalid index {s:?}"))
}

fn parse_item(item: &str, out: &mut Vec<u64>) -> Result<(), String> {
    let (range, step) = match item.split_once(':') {
        Some((r, s)) => (r, number(s)?),
        None => (item, 1),
    };
    if step == 0 {
        return Err("range step must be positive".into());
    }
    if let Some((a, b)) = range.split_once("..=") {
        let (a, b) = (number(a)?, number(b)?);
        out.extend((a..=b).step_by(step as usize));
    } else if let Some((a, b)) = range.split_once("..") {
        let (a, b) = (number(a)?, number(b)?);
        out.extend((a..b).step_by(step as usize));
    } else if step != 1 {
        return Err(format!("a step needs a range, got {item:?}"));
    } else {
        out.push(number(range)?);
    }
    Ok(())
}

impl FromStr for IndexList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for item in s.split(',') {
            parse_item(item, &mut out)?;
        }
        if out.is_empty() {
            return Err(format!("{s:?} selects no index"));
        }
        if out.windows(2).any(|w| w[1] <= w[0]) {
            return Err(format!("indices in {s:?} must be strictly increasing"));
        }
        Ok(Self(out))
    }
}

impl fmt::Display for IndexList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}
