//! Differential fuzzing: the condensation engine against the Leibniz oracle,
//! and the Laplacian determinant against enumerated arborescences, over
//! randomly chosen rings and sizes.

use rand::Rng;
use rayon::prelude::*;

use crate::arborescence::WeightedDigraph;
use crate::error::Result;
use crate::matrix::Matrix;
use crate::ring::{Ring, RingValue};
use crate::verify::{case_rng, pick, random_matrix, with_entry, with_zero_row};

const PRIMES: [u64; 7] = [2, 3, 5, 7, 13, 101, 65_537];

/// Deliberate defect for checking that the harness notices disagreements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Adds one to every condensation determinant of size at least 2.
    OffByOne,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseFailure {
    pub case: usize,
    pub ring: String,
    pub n: usize,
    pub check: &'static str,
    pub engine: String,
    pub oracle: String,
}

impl std::fmt::Display for CaseFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "case {} ring={} n={} check={} engine={} oracle={}",
            self.case, self.ring, self.n, self.check, self.engine, self.oracle
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzSummary {
    pub cases: usize,
    pub failures: Vec<CaseFailure>,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_ring<R: Rng>(rng: &mut R) -> Ring {
    match rng.gen_range(0..4) {
        0 | 1 => Ring::Integers,
        2 => Ring::modular(*pick(rng, &PRIMES)).expect("prime modulus"),
        _ => Ring::polynomial(["s", "t"]),
    }
}

/// Small random entry: an integer in `[-4, 4]`, or for polynomial rings an
/// affine form `c0 + c1*s + c2*t` with coefficients in `[-2, 2]`.
fn random_entry<R: Rng>(rng: &mut R, ring: &Ring) -> RingValue {
    match ring {
        Ring::Polynomial(_) => {
            let s = ring.var("s").expect("declared");
            let t = ring.var("t").expect("declared");
            let c = |rng: &mut R| ring.from_i64(rng.gen_range(-2..=2));
            let c0 = c(rng);
            let c1 = c(rng).mul(&s).expect("same ring");
            let c2 = c(rng).mul(&t).expect("same ring");
            c0.add(&c1).and_then(|v| v.add(&c2)).expect("same ring")
        }
        _ => ring.from_i64(rng.gen_range(-4..=4)),
    }
}

fn random_square<R: Rng>(rng: &mut R, ring: &Ring, n: usize) -> Matrix {
    if matches!(ring, Ring::Polynomial(_)) {
        Matrix::from_fn(ring.clone(), n, n, |_, _| random_entry(rng, ring))
    } else {
        random_matrix(rng, ring, n, n, 4)
    }
}

fn run_case(seed: u64, case: usize, fault: Fault) -> Result<Vec<CaseFailure>> {
    let mut rng = case_rng(seed, case as u64);
    let ring = random_ring(&mut rng);
    let max = if matches!(ring, Ring::Polynomial(_)) {
        4
    } else {
        5
    };
    let n = rng.gen_range(0..=max);
    let mut failures = Vec::new();

    let mut a = random_square(&mut rng, &ring, n);
    if n >= 1 {
        match rng.gen_range(0..4) {
            0 => a = with_entry(&a, n, n, ring.zero()),
            1 => a = with_zero_row(&a, rng.gen_range(1..=n)),
            _ => {}
        }
    }
    let mut engine = a.chio_det()?;
    if fault == Fault::OffByOne && n >= 2 {
        engine = engine.add(&ring.one())?;
    }
    let oracle = a.leibniz_det()?;
    if engine != oracle {
        failures.push(CaseFailure {
            case,
            ring: ring.to_string(),
            n,
            check: "det",
            engine: engine.to_string(),
            oracle: oracle.to_string(),
        });
    }

    let gn = n.max(1);
    let g = WeightedDigraph::new(random_square(&mut rng, &ring, gn))?;
    let count = g.count_arborescences()?;
    let brute = g.brute_arborescence_sum()?;
    if count != brute {
        failures.push(CaseFailure {
            case,
            ring: ring.to_string(),
            n: gn,
            check: "mtt",
            engine: count.to_string(),
            oracle: brute.to_string(),
        });
    }
    Ok(failures)
}

/// Runs `cases` seeded cases; failures are listed in case order.
pub fn fuzz(seed: u64, cases: usize, fault: Fault) -> Result<FuzzSummary> {
    let per_case: Vec<Vec<CaseFailure>> = (0..cases)
        .into_par_iter()
        .map(|k| run_case(seed, k, fault))
        .collect::<Result<_>>()?;
    Ok(FuzzSummary {
        cases,
        failures: per_case.into_iter().flatten().collect(),
    })
}
