//! Plain-text Cayley tables: a line `order n`, then `n` rows of `n`
//! whitespace-separated 0-based ids. Row/column 0 must be the identity.

use std::fmt::Write as _;

use super::Group;
use crate::error::{Error, Result};

impl Group {
    pub fn parse_cayley(name: impl Into<String>, text: &str) -> Result<Group> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let order = parse_header(header)?;
        let mut table = Vec::with_capacity(order * order);
        for row in 0..order {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {row} of {order}")))?;
            let before = table.len();
            for tok in line.split_whitespace() {
                table.push(tok.parse::<usize>().map_err(|_| Error::Parse(format!("row {row}: bad entry {tok:?}")))?);
            }
            if table.len() - before != order {
                return Err(Error::Parse(format!("row {row} has {} entries, expected {order}", table.len() - before)));
            }
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing content: {extra:?}")));
        }
        Group::from_table(name, order, table)
    }

    pub fn to_cayley_text(&self) -> String {
        let n = self.order();
        let mut out = format!("order {n}\n");
        for g in 0..n {
            let row: Vec<String> = (0..n).map(|h| self.mul(g, h).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

fn parse_header(line: &str) -> Result<usize> {
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some("order"), Some(n), None) => n.parse().map_err(|_| Error::Parse(format!("bad order {n:?}"))),
        _ => Err(Error::Parse(format!("expected `order n`, found {line:?}"))),
    }
}
