//! Textual lattice targets: `<family>:<args>`, `fixture:<name>`,
//! `file:<path>`, `coset:<group>` and `subgroup:<group>`.

use std::fmt;
use std::str::FromStr;

use crate::cosetlike::load_fixture;
use crate::dirichlet::DirichletSeries;
use crate::error::{Error, Result};
use crate::families::{FamilySpec, Labeled};
use crate::groups::{coset_lattice, format_set, subgroup_lattice, GroupSpec};
use crate::lattice::{parse_lat, LatticeOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Family(FamilySpec),
    Fixture(String),
    File(String),
    Coset(GroupSpec),
    Subgroup(GroupSpec),
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Target> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("target `{s}` must look like kind:args")))?;
        Ok(match kind {
            "fixture" => Target::Fixture(rest.to_string()),
            "file" => Target::File(rest.to_string()),
            "coset" => Target::Coset(rest.parse()?),
            "subgroup" => Target::Subgroup(rest.parse()?),
            _ => Target::Family(s.parse()?),
        })
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Family(spec) => write!(f, "{spec}"),
            Target::Fixture(name) => write!(f, "fixture:{name}"),
            Target::File(path) => write!(f, "file:{path}"),
            Target::Coset(g) => write!(f, "coset:{g}"),
            Target::Subgroup(g) => write!(f, "subgroup:{g}"),
        }
    }
}

impl Target {
    pub fn build(&self, opts: &LatticeOptions) -> Result<Labeled<String>> {
        let numbered = |lattice: crate::Lattice| {
            let labels = (0..lattice.len()).map(|i| i.to_string()).collect();
            Labeled { lattice, labels }
        };
        match self {
            Target::Family(spec) => spec.build(opts),
            Target::Fixture(name) => Ok(numbered(load_fixture(name)?)),
            Target::File(path) => Ok(numbered(parse_lat(&std::fs::read_to_string(path)?, opts)?)),
            Target::Coset(g) => {
                let cl = coset_lattice(&g.build()?, opts)?;
                let labels = cl.legend();
                Ok(Labeled { lattice: cl.lattice, labels })
            }
            Target::Subgroup(g) => {
                let sub = subgroup_lattice(&g.build()?)?;
                let labels = sub.labels.iter().map(|&h| format_set(h)).collect();
                Ok(Labeled { lattice: sub.lattice, labels })
            }
        }
    }

    /// Closed-form series where one is known.
    pub fn closed_form(&self) -> Result<Option<DirichletSeries>> {
        match self {
            Target::Family(spec) => spec.closed_form(),
            _ => Ok(None),
        }
    }
}
