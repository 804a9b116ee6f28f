//! The line-oriented `.lat` format.
//!
//! ```text
//! # comment
//! n 4
//! c 0 1
//! c 0 2
//! c 1 3
//! c 2 3
//! ```
//!
//! `c a b` states that `a` is covered by `b`.

use std::fmt::Write;

use super::{Lattice, LatticeOptions};
use crate::error::{Error, Result};

pub fn parse_lat(text: &str, opts: &LatticeOptions) -> Result<Lattice> {
    let mut n: Option<usize> = None;
    let mut covers = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || Error::Parse(format!("line {}: `{}`", lineno + 1, raw.trim()));
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["n", count] => {
                if n.is_some() {
                    return Err(bad());
                }
                n = Some(count.parse().map_err(|_| bad())?);
            }
            ["c", a, b] => {
                if n.is_none() {
                    return Err(bad());
                }
                covers.push((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?));
            }
            _ => return Err(bad()),
        }
    }
    let n = n.ok_or_else(|| Error::Parse("missing `n <count>` line".into()))?;
    Lattice::from_covers_with(n, &covers, opts)
}

pub fn render_lat(l: &Lattice) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", l.len()).unwrap();
    for (a, b) in l.covers() {
        writeln!(out, "c {a} {b}").unwrap();
    }
    out
}
