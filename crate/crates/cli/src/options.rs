use std::fmt;
use std::str::FromStr;

use meshsum_core::analytics::{GrowthStart, SeedDescriptor};
use meshsum_core::mesh::SeedKind;
use num_bigint::BigInt;

use crate::CliError;

/// `-r` argument: a single degree `7` or an inclusive range `7:12`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRange {
    pub lo: u32,
    pub hi: u32,
}

impl DegreeRange {
    pub fn single(r: u32) -> Self {
        DegreeRange { lo: r, hi: r }
    }

    pub fn degrees(self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }

    pub fn is_single(self) -> bool {
        self.lo == self.hi
    }

    /// The degree of a single-valued range.
    pub fn only(self) -> Result<u32, CliError> {
        if self.is_single() {
            Ok(self.lo)
        } else {
            Err(CliError::Usage(format!("expected a single degree, got the range {self}")))
        }
    }
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |x: &str| x.trim().parse::<u32>().map_err(|_| format!("invalid degree {x:?}"));
        match s.split_once(':') {
            Some((lo, hi)) => {
                let (lo, hi) = (parse(lo)?, parse(hi)?);
                if lo > hi {
                    return Err(format!("empty degree range {lo}:{hi}"));
                }
                Ok(DegreeRange { lo, hi })
            }
            None => parse(s).map(DegreeRange::single),
        }
    }
}

impl fmt::Display for DegreeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}:{}", self.lo, self.hi)
        }
    }
}

/// `--seed` argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedArg {
    Vertex,
    Face,
    /// Boundary statistics `t:d` of an arbitrary convex disk (analytic only).
    Profile { t: BigInt, d: BigInt },
}

impl SeedArg {
    /// Seed kind for explicit construction, if this seed can be built.
    pub fn kind(&self) -> Option<SeedKind> {
        match self {
            SeedArg::Vertex => Some(SeedKind::Vertex),
            SeedArg::Face => Some(SeedKind::Face),
            SeedArg::Profile { .. } => None,
        }
    }

    pub fn growth_start(&self, r: u32) -> Result<GrowthStart, CliError> {
        Ok(match self {
            SeedArg::Vertex => GrowthStart::single_vertex(r)?,
            SeedArg::Face => GrowthStart::from_seed(&SeedDescriptor::triangle(r)?)?,
            SeedArg::Profile { t, d } => GrowthStart::from_seed(&SeedDescriptor::new(r, t.clone(), d.clone())?)?,
        })
    }
}

impl FromStr for SeedArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "vertex" => Ok(SeedArg::Vertex),
            "face" => Ok(SeedArg::Face),
            _ => {
                let (t, d) = s
                    .split_once(':')
                    .ok_or_else(|| format!("seed must be vertex, face or t:d, got {s:?}"))?;
                let int = |x: &str| BigInt::from_str(x.trim()).map_err(|_| format!("invalid seed component {x:?}"));
                Ok(SeedArg::Profile { t: int(t)?, d: int(d)? })
            }
        }
    }
}

impl fmt::Display for SeedArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedArg::Vertex => f.write_str("vertex"),
            SeedArg::Face => f.write_str("face"),
            SeedArg::Profile { t, d } => write!(f, "{t}:{d}"),
        }
    }
}
