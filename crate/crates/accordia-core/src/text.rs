//! Dissection text format: `n=<int>;parity=<hollow|solid>;diagonals=<a-b>,<a-b>,...`

use crate::error::{Error, Result};
use crate::polygon::{Diag, Dissection, Parity};
use std::collections::BTreeSet;

pub fn parse_dissection(text: &str) -> Result<Dissection> {
    let text = text.trim();
    let mut parts = text.splitn(3, ';');
    let mut offset = 0usize;

    let n_part = parts.next().unwrap_or("");
    let n_val = expect_key(n_part, "n", offset)?;
    let n: usize = n_val
        .parse()
        .map_err(|_| parse_err(offset + 2, format!("bad integer `{n_val}`")))?;
    offset += n_part.len() + 1;

    let parity_part = parts
        .next()
        .ok_or_else(|| parse_err(offset, "missing `parity=` field".into()))?;
    let parity_val = expect_key(parity_part, "parity", offset)?;
    let parity = match parity_val {
        "hollow" => Parity::Hollow,
        "solid" => Parity::Solid,
        other => {
            return Err(parse_err(
                offset + 7,
                format!("parity must be hollow or solid, got `{other}`"),
            ))
        }
    };
    offset += parity_part.len() + 1;

    let diag_part = parts
        .next()
        .ok_or_else(|| parse_err(offset, "missing `diagonals=` field".into()))?;
    let diag_val = expect_key(diag_part, "diagonals", offset)?;
    let mut diagonals = BTreeSet::new();
    if !diag_val.is_empty() {
        let mut pos = offset + "diagonals=".len();
        for item in diag_val.split(',') {
            let (a, b) = item
                .split_once('-')
                .ok_or_else(|| parse_err(pos, format!("expected `a-b`, got `{item}`")))?;
            let a: usize = a
                .parse()
                .map_err(|_| parse_err(pos, format!("bad label `{a}`")))?;
            let b: usize = b
                .parse()
                .map_err(|_| parse_err(pos, format!("bad label `{b}`")))?;
            diagonals.insert(Diag::new(a, b)?);
            pos += item.len() + 1;
        }
    }
    Dissection::build(n, parity, &diagonals)
}

pub fn serialize_dissection(d: &Dissection) -> String {
    let diags: Vec<String> = d.diagonals().iter().map(|x| x.to_string()).collect();
    format!(
        "n={};parity={};diagonals={}",
        d.n(),
        d.parity(),
        diags.join(",")
    )
}

fn expect_key<'a>(part: &'a str, key: &str, offset: usize) -> Result<&'a str> {
    let prefix = format!("{key}=");
    part.strip_prefix(prefix.as_str())
        .ok_or_else(|| parse_err(offset, format!("expected `{key}=...`, got `{part}`")))
}

fn parse_err(pos: usize, msg: String) -> Error {
    Error::Parse { pos, msg }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_running_example() {
        let d = parse_dissection("n=7;parity=hollow;diagonals=3-7,3-13,9-13").unwrap();
        assert_eq!(d.n(), 7);
        assert_eq!(d.len(), 3);
        assert_eq!(
            serialize_dissection(&d),
            "n=7;parity=hollow;diagonals=3-7,3-13,9-13"
        );
    }

    #[test]
    fn parses_empty() {
        let d = parse_dissection("n=3;parity=hollow;diagonals=").unwrap();
        assert!(d.is_empty());
        assert_eq!(serialize_dissection(&d), "n=3;parity=hollow;diagonals=");
    }

    #[test]
    fn crossing_pair_propagates() {
        let err = parse_dissection("n=7;parity=hollow;diagonals=3-7,5-11").unwrap_err();
        assert!(matches!(err, Error::CrossingPair(_, _)));
    }

    #[test]
    fn parse_error_has_position() {
        let err = parse_dissection("n=7;speed=hollow;diagonals=").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 4, .. }));
    }
}
