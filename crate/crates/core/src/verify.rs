//! Sweeps that check an identity over many cases: symbolic certificates for a
//! fixed `n`, or seeded random integer (or `Z/m`) instances.
//!
//! Case `k` of a random sweep draws from a ChaCha stream selected by `k`, so any
//! single case can be replayed from `(seed, k)` alone.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arborescence::WeightedDigraph;
use crate::error::{Error, Result};
use crate::funcmap::{enumerate_n_fixing, EndoMap};
use crate::identities::{
    generic_matrix, generic_ring, verify_chio, verify_chio_gen, CondensationReport,
    SupergenChecker, Theorem,
};
use crate::limits;
use crate::matrix::Matrix;
use crate::ring::{Ring, RingValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Random,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "random" => Ok(Mode::Random),
            _ => Err(Error::Parse {
                line: 0,
                msg: format!("unknown mode {s:?}"),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub theorem: Theorem,
    pub n: usize,
    pub mode: Mode,
    /// Ring for random instances; ignored in symbolic mode.
    pub ring: Ring,
    pub trials: usize,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(theorem: Theorem, n: usize, mode: Mode) -> Self {
        VerifyConfig {
            theorem,
            n,
            mode,
            ring: Ring::Integers,
            trials: 100,
            seed: 0,
        }
    }
}

/// Largest `n` accepted for symbolic certificates.
pub fn symbolic_bound(theorem: Theorem) -> usize {
    match theorem {
        Theorem::Chio | Theorem::ChioGen | Theorem::Mtt => 4,
        Theorem::Supergen => 3,
    }
}

pub fn min_n(theorem: Theorem) -> usize {
    match theorem {
        Theorem::Mtt => 1,
        _ => 2,
    }
}

/// Half-width of the uniform entry range used for random instances.
pub fn entry_range(theorem: Theorem) -> i64 {
    match theorem {
        Theorem::Supergen => 5,
        _ => 9,
    }
}

/// RNG for case `index` of a sweep seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_matrix<R: Rng>(
    rng: &mut R,
    ring: &Ring,
    rows: usize,
    cols: usize,
    range: i64,
) -> Matrix {
    Matrix::from_fn(ring.clone(), rows, cols, |_, _| {
        ring.from_i64(rng.gen_range(-range..=range))
    })
}

/// Uniformly random map on `{1..n}` fixing `n`.
pub fn random_n_fixing<R: Rng>(rng: &mut R, n: usize) -> EndoMap {
    let images = (1..n).map(|_| rng.gen_range(1..=n)).chain([n]).collect();
    EndoMap::new(images).expect("images in range")
}

fn check_config(cfg: &VerifyConfig) -> Result<()> {
    let lo = min_n(cfg.theorem);
    let hi = match cfg.mode {
        Mode::Symbolic => symbolic_bound(cfg.theorem),
        Mode::Random => limits::max_n(),
    };
    if cfg.n < lo {
        return Err(Error::Precondition(format!(
            "{} needs n >= {lo}, got {}",
            cfg.theorem, cfg.n
        )));
    }
    if cfg.n > hi {
        return Err(Error::BoundExceeded {
            n: cfg.n,
            bound: hi,
        });
    }
    if cfg.mode == Mode::Random && matches!(cfg.ring, Ring::Polynomial(_)) {
        return Err(Error::Precondition(
            "random mode draws integer entries; use --ring int or mod:<m>".into(),
        ));
    }
    Ok(())
}

/// Runs the sweep described by `cfg`. Reports come back in case order.
pub fn run(cfg: &VerifyConfig) -> Result<Vec<CondensationReport>> {
    check_config(cfg)?;
    match cfg.mode {
        Mode::Symbolic => run_symbolic(cfg.theorem, cfg.n),
        Mode::Random => run_random(cfg),
    }
}

fn run_symbolic(theorem: Theorem, n: usize) -> Result<Vec<CondensationReport>> {
    match theorem {
        Theorem::Chio => {
            let ring = generic_ring(n, &["x"]);
            let a = generic_matrix(&ring, "x", n)?;
            Ok(vec![verify_chio(&a)?])
        }
        Theorem::ChioGen => {
            let ring = generic_ring(n, &["x"]);
            let a = generic_matrix(&ring, "x", n)?;
            let maps: Vec<EndoMap> = enumerate_n_fixing(n).collect();
            maps.par_iter().map(|f| verify_chio_gen(f, &a)).collect()
        }
        Theorem::Supergen => {
            let ring = generic_ring(n, &["x", "y"]);
            let a = generic_matrix(&ring, "x", n)?;
            let b = generic_matrix(&ring, "y", n)?;
            Ok(vec![SupergenChecker::new(n)?.verify(&a, &b)?])
        }
        Theorem::Mtt => {
            let ring = generic_ring(n, &["w"]);
            let g = WeightedDigraph::new(generic_matrix(&ring, "w", n)?)?;
            Ok(vec![g.verify_matrix_tree()?])
        }
    }
}

fn run_random(cfg: &VerifyConfig) -> Result<Vec<CondensationReport>> {
    let n = cfg.n;
    let range = entry_range(cfg.theorem);
    let supergen = match cfg.theorem {
        Theorem::Supergen => Some(SupergenChecker::new(n)?),
        _ => None,
    };
    (0..cfg.trials as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = case_rng(cfg.seed, k);
            let ring = &cfg.ring;
            match cfg.theorem {
                Theorem::Chio => {
                    let mut a = random_matrix(&mut rng, ring, n, n, range);
                    if k % 4 == 3 {
                        a = with_entry(&a, n, n, ring.zero());
                    }
                    verify_chio(&a)
                }
                Theorem::ChioGen => {
                    let a = random_matrix(&mut rng, ring, n, n, range);
                    let f = random_n_fixing(&mut rng, n);
                    verify_chio_gen(&f, &a)
                }
                Theorem::Supergen => {
                    let a = random_matrix(&mut rng, ring, n, n, range);
                    let b = random_matrix(&mut rng, ring, n, n, range);
                    supergen.as_ref().expect("built above").verify(&a, &b)
                }
                Theorem::Mtt => {
                    let g = WeightedDigraph::new(random_matrix(&mut rng, ring, n, n, range))?;
                    let mut report = g.verify_matrix_tree()?;
                    // cross the engine used by `count_arborescences` as well
                    if g.count_arborescences()? != report.lhs {
                        report.verdict = false;
                    }
                    Ok(report)
                }
            }
        })
        .collect()
}

/// Copy of `m` with entry `(i, j)` replaced.
pub fn with_entry(m: &Matrix, i: usize, j: usize, value: RingValue) -> Matrix {
    let mut value = Some(value);
    Matrix::from_fn(m.ring().clone(), m.rows(), m.cols(), |r, c| {
        if (r, c) == (i, j) {
            value.take().expect("single replacement")
        } else {
            m.get(r, c).clone()
        }
    })
}

/// Copy of `m` with row `i` set to zero.
pub fn with_zero_row(m: &Matrix, i: usize) -> Matrix {
    Matrix::from_fn(m.ring().clone(), m.rows(), m.cols(), |r, c| {
        if r == i {
            m.ring().zero()
        } else {
            m.get(r, c).clone()
        }
    })
}

/// A random entry of `choices`, for picking moduli and sizes.
pub fn pick<'a, T, R: Rng>(rng: &mut R, choices: &'a [T]) -> &'a T {
    choices.choose(rng).expect("nonempty choices")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chio_gen_symbolic_n3_has_nine_cases() {
        let reports = run(&VerifyConfig::new(Theorem::ChioGen, 3, Mode::Symbolic)).unwrap();
        assert_eq!(reports.len(), 9);
        assert!(reports.iter().all(|r| r.verdict));
    }

    #[test]
    fn bounds_are_enforced() {
        let too_big = VerifyConfig::new(Theorem::Supergen, 4, Mode::Symbolic);
        assert!(matches!(run(&too_big), Err(Error::BoundExceeded { .. })));
        let too_small = VerifyConfig::new(Theorem::Chio, 1, Mode::Symbolic);
        assert!(matches!(run(&too_small), Err(Error::Precondition(_))));
        let mut poly = VerifyConfig::new(Theorem::Chio, 3, Mode::Random);
        poly.ring = Ring::polynomial(["x"]);
        assert!(run(&poly).is_err());
    }

    #[test]
    fn random_sweeps_are_reproducible() {
        let mut cfg = VerifyConfig::new(Theorem::Mtt, 4, Mode::Random);
        cfg.trials = 20;
        cfg.seed = 42;
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.verdict));
    }

    #[test]
    fn case_streams_are_independent_of_sweep_length() {
        let mut r1 = case_rng(7, 3);
        let mut r2 = case_rng(7, 3);
        let m1 = random_matrix(&mut r1, &Ring::Integers, 3, 3, 9);
        let m2 = random_matrix(&mut r2, &Ring::Integers, 3, 3, 9);
        assert_eq!(m1, m2);
        let mut r3 = case_rng(7, 4);
        assert_ne!(m1, random_matrix(&mut r3, &Ring::Integers, 3, 3, 9));
    }

    #[test]
    fn composite_modulus_identities_hold() {
        let mut cfg = VerifyConfig::new(Theorem::ChioGen, 4, Mode::Random);
        cfg.ring = Ring::modular(12).unwrap();
        cfg.trials = 30;
        assert!(run(&cfg).unwrap().iter().all(|r| r.verdict));
    }
}
