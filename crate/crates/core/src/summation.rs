//! Euler summation of second-order linear recurrences, and the resulting
//! formal vertex, edge and face counts of the infinite mesh.
//!
//! A sequence with `x_{n+2} = γ·x_{n+1} − x_n` has generating function
//!
//! ```text
//!   F(t) = ((t − γt²)·x₁ + t²·x₂) / (1 − γt + t²)
//! ```
//!
//! and its Euler sum is the value of that rational function at `t = 1`,
//! `((1 − γ)·x₁ + x₂) / (2 − γ)`, defined whenever `γ ≠ 2`.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytics::{GrowthStart, SeedDescriptor, SeedError};
use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SummationError {
    #[error("t = {t} is a pole of the generating function; 1 - γt + t² vanishes at t = {} and t = {}", .roots[0], .roots[1])]
    Pole { t: Rational, roots: [String; 2] },
    #[error("Euler sum undefined for γ = {gamma} (the generating function has a pole at t = 1)")]
    UndefinedSum { gamma: i64 },
    #[error("degree 6 excluded: the flat triangular grid has no Euler-summed counts")]
    FlatGrid,
    #[error("degree {r} < 6 closes up into a polyhedron; the mesh invariants need r >= 7")]
    Spherical { r: u32 },
    #[error(transparent)]
    Seed(#[from] SeedError),
}

/// The sequence `x_{n+2} = γ·x_{n+1} − x_n` determined by `γ`, `x₁`, `x₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSeries {
    pub gamma: i64,
    pub x1: BigInt,
    pub x2: BigInt,
}

impl RecurrenceSeries {
    pub fn new(gamma: i64, x1: impl Into<BigInt>, x2: impl Into<BigInt>) -> Self {
        RecurrenceSeries { gamma, x1: x1.into(), x2: x2.into() }
    }

    /// The series obeying the layer recurrence of the degree-`r` mesh (`γ = r − 4`).
    pub fn for_degree(r: u32, x1: impl Into<BigInt>, x2: impl Into<BigInt>) -> Self {
        Self::new(r as i64 - 4, x1, x2)
    }

    /// Terms `x₁, x₂, …` generated by the recurrence.
    pub fn terms(&self) -> impl Iterator<Item = BigInt> + '_ {
        let gamma = BigInt::from(self.gamma);
        let mut state = (self.x1.clone(), self.x2.clone());
        std::iter::from_fn(move || {
            let next = &gamma * &state.1 - &state.0;
            let current = std::mem::replace(&mut state.0, std::mem::replace(&mut state.1, next));
            Some(current)
        })
    }

    fn pole_roots(&self) -> [String; 2] {
        let gamma = BigInt::from(self.gamma);
        let disc: BigInt = &gamma * &gamma - 4;
        if !disc.is_negative() {
            let root = disc.sqrt();
            if &root * &root == disc {
                let two = BigInt::from(2);
                let lo = Rational::new(&gamma - &root, two.clone()).expect("nonzero");
                let hi = Rational::new(&gamma + &root, two).expect("nonzero");
                return [lo.to_string(), hi.to_string()];
            }
        }
        let sqrt = if disc.is_negative() { format!("i√{}", -disc) } else { format!("√{disc}") };
        [format!("({gamma} - {sqrt})/2"), format!("({gamma} + {sqrt})/2")]
    }
}

/// Value of the analytic continuation `F_x(t)`.
pub fn generating_value(series: &RecurrenceSeries, t: &Rational) -> Result<Rational, SummationError> {
    let gamma = Rational::from(series.gamma);
    let t2 = t * t;
    let denominator = Rational::one() - &gamma * t + &t2;
    let numerator = (t - &(&gamma * &t2)) * Rational::from(series.x1.clone()) + &t2 * &Rational::from(series.x2.clone());
    numerator
        .checked_div(&denominator)
        .map_err(|_| SummationError::Pole { t: t.clone(), roots: series.pole_roots() })
}

/// Euler sum `((1 − γ)·x₁ + x₂) / (2 − γ)`.
pub fn euler_sum(series: &RecurrenceSeries) -> Result<Rational, SummationError> {
    if series.gamma == 2 {
        return Err(SummationError::UndefinedSum { gamma: 2 });
    }
    let numerator = (1 - series.gamma) * &series.x1 + &series.x2;
    Ok(Rational::new(numerator, 2 - series.gamma).expect("2 - γ is nonzero"))
}

/// Euler sum in the degree form `((r − 5)·x₁ − x₂) / (r − 6)`.
pub fn euler_sum_by_lemma(r: i64, x1: &BigInt, x2: &BigInt) -> Result<Rational, SummationError> {
    if r == 6 {
        return Err(SummationError::FlatGrid);
    }
    Ok(Rational::new((r - 5) * x1 - x2, r - 6).expect("r - 6 is nonzero"))
}

/// Exact partial sum `Σ_{n=1}^{N} x_n tⁿ`; zero when `N = 0`.
pub fn partial_sum(series: &RecurrenceSeries, t: &Rational, terms: usize) -> Rational {
    let mut power = Rational::one();
    let mut total = Rational::zero();
    for x in series.terms().take(terms) {
        power = &power * t;
        total = total + &power * &Rational::from(x);
    }
    total
}

/// Formal vertex, edge and face counts of the mesh.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshInvariants {
    #[serde(rename = "vM")]
    pub v: Rational,
    #[serde(rename = "eM")]
    pub e: Rational,
    #[serde(rename = "fM")]
    pub f: Rational,
}

fn check_mesh_degree(r: u32) -> Result<(), SummationError> {
    match r {
        6 => Err(SummationError::FlatGrid),
        0..=5 => Err(SummationError::Spherical { r }),
        _ => Ok(()),
    }
}

/// `(−6/(r−6), −3r/(r−6), −2r/(r−6))`.
pub fn mesh_invariants(r: u32) -> Result<MeshInvariants, SummationError> {
    check_mesh_degree(r)?;
    let r = r as i64;
    let q = |num: i64| Rational::new(num, r - 6).expect("r > 6");
    Ok(MeshInvariants { v: q(-6), e: q(-3 * r), f: q(-2 * r) })
}

/// Mesh invariants summed from an explicit growth start: the seed's own
/// counts plus the Euler sums of the per-layer increments.
pub fn mesh_invariants_from_start(start: &GrowthStart) -> Result<MeshInvariants, SummationError> {
    check_mesh_degree(start.r)?;
    let layers = start.predict(2)?;
    let (first, second) = (&layers[0].deltas, &layers[1].deltas);
    let sum = |base: &BigInt, x1: &BigInt, x2: &BigInt| -> Result<Rational, SummationError> {
        Ok(Rational::from(base.clone()) + euler_sum(&RecurrenceSeries::for_degree(start.r, x1.clone(), x2.clone()))?)
    };
    Ok(MeshInvariants {
        v: sum(&start.base.v, &first.v, &second.v)?,
        e: sum(&start.base.e, &first.e, &second.e)?,
        f: sum(&start.base.f, &first.f, &second.f)?,
    })
}

/// Mesh invariants summed from the layers grown around a convex seed disk.
pub fn mesh_invariants_from_seed(seed: &SeedDescriptor) -> Result<MeshInvariants, SummationError> {
    mesh_invariants_from_start(&GrowthStart::from_seed(seed)?)
}

/// Whether `v − e + f = 1` holds exactly.
pub fn euler_formula_check(m: &MeshInvariants) -> bool {
    (&m.v - &m.e + &m.f) == Rational::one()
}
