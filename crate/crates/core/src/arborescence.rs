//! Weighted digraphs and spanning arborescences rooted at vertex `n`.
//!
//! The root-deleted Laplacian `L = (delta_{i,j} d+(i) - W(i,j))_{i,j<n}` has
//! determinant equal to the weighted sum over arborescences directed toward
//! `n`, where an arborescence is encoded by the n-potent map sending each
//! vertex to its parent. Other roots are handled by swapping labels.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::funcmap::{enumerate_n_potent, map_to_tree, EndoMap, RootedTree};
use crate::identities::{CondensationReport, Theorem};
use crate::limits;
use crate::matrix::Matrix;
use crate::ring::{product, sum, Ring, RingValue};

/// `n` vertices with weight `W(i, j)` on the arc `i -> j`, stored as a matrix.
/// Self-weights are allowed; they enter `d+(i)` and cancel on the diagonal of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    weights: Matrix,
}

impl WeightedDigraph {
    pub fn new(weights: Matrix) -> Result<Self> {
        if !weights.is_square() {
            return Err(Error::NotSquare {
                rows: weights.rows(),
                cols: weights.cols(),
            });
        }
        Ok(WeightedDigraph { weights })
    }

    /// Arc list with 1-based `(tail, head, weight)`; repeated arcs are summed
    /// and missing arcs weigh zero.
    pub fn from_arcs(ring: &Ring, n: usize, arcs: &[(usize, usize, BigInt)]) -> Result<Self> {
        let mut entries = vec![ring.zero(); n * n];
        for (u, v, w) in arcs {
            for &x in [u, v] {
                if x == 0 || x > n {
                    return Err(Error::IndexOutOfRange { index: x, n });
                }
            }
            let slot = &mut entries[(u - 1) * n + (v - 1)];
            *slot = slot.add(&ring.from_bigint(w))?;
        }
        Ok(WeightedDigraph {
            weights: Matrix::new(ring.clone(), n, n, entries)?,
        })
    }

    /// Every arc `i -> j` (loops included) with weight one.
    pub fn complete_unit(ring: &Ring, n: usize) -> Self {
        WeightedDigraph {
            weights: Matrix::from_fn(ring.clone(), n, n, |_, _| ring.one()),
        }
    }

    pub fn n(&self) -> usize {
        self.weights.rows()
    }

    pub fn ring(&self) -> &Ring {
        self.weights.ring()
    }

    pub fn weights(&self) -> &Matrix {
        &self.weights
    }

    pub fn weight(&self, i: usize, j: usize) -> &RingValue {
        self.weights.get(i, j)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n() {
            return Err(Error::IndexOutOfRange {
                index: v,
                n: self.n(),
            });
        }
        Ok(())
    }

    /// `d+(i) = sum_j W(i, j)`.
    pub fn out_strength(&self, i: usize) -> Result<RingValue> {
        self.check_vertex(i)?;
        sum(self.ring(), self.weights.row(i))
    }

    /// The `(n-1) x (n-1)` matrix `(delta_{i,j} d+(i) - W(i,j))`.
    pub fn build_laplacian(&self) -> Result<Matrix> {
        let m = self.n().saturating_sub(1);
        let strengths = (1..=m)
            .map(|i| self.out_strength(i))
            .collect::<Result<Vec<_>>>()?;
        Matrix::try_from_fn(self.ring().clone(), m, m, |i, j| {
            let w = self.weight(i, j);
            if i == j {
                strengths[i - 1].sub(w)
            } else {
                Ok(w.neg())
            }
        })
    }

    /// Weighted count of arborescences rooted at `n`, as `det L`.
    ///
    /// Uses the condensation engine over integral domains and the Leibniz
    /// expansion otherwise.
    pub fn count_arborescences(&self) -> Result<RingValue> {
        let l = self.build_laplacian()?;
        if self.ring().is_integral_domain() {
            l.chio_det()
        } else {
            l.leibniz_det()
        }
    }

    fn check_bound(&self) -> Result<()> {
        let bound = limits::max_n();
        if self.n() > bound {
            return Err(Error::BoundExceeded { n: self.n(), bound });
        }
        Ok(())
    }

    fn map_weight(&self, f: &EndoMap) -> Result<RingValue> {
        product(
            self.ring(),
            (1..self.n()).map(|i| self.weight(i, f.apply(i))),
        )
    }

    /// `sum_f prod_{i<n} W(i, f(i))` over n-potent `f`, by enumeration.
    pub fn brute_arborescence_sum(&self) -> Result<RingValue> {
        self.check_bound()?;
        if self.n() == 0 {
            return Ok(self.ring().one());
        }
        enumerate_n_potent(self.n())
            .try_fold(self.ring().zero(), |acc, f| acc.add(&self.map_weight(&f)?))
    }

    /// Each arborescence rooted at `n` with nonzero weight, in lexicographic
    /// order of the parent arrays.
    pub fn enumerate_arborescences(
        &self,
    ) -> Result<impl Iterator<Item = (RootedTree, RingValue)> + '_> {
        self.check_bound()?;
        if self.n() == 0 {
            return Err(Error::Precondition("graph has no vertices".into()));
        }
        Ok(enumerate_n_potent(self.n()).filter_map(move |f| {
            let w = self.map_weight(&f).expect("entries share one ring");
            if w.is_zero() {
                return None;
            }
            let tree = map_to_tree(&f).expect("enumerated maps are n-potent");
            Some((tree, w))
        }))
    }

    /// Swaps the labels `v` and `n` (simultaneous row and column swap), so that
    /// arborescences into `v` become arborescences into `n`.
    pub fn relabel_root(&self, v: usize) -> Result<WeightedDigraph> {
        self.check_vertex(v)?;
        let n = self.n();
        let mut weights = self.weights.clone();
        weights.swap_rows(v, n);
        weights.swap_cols(v, n);
        Ok(WeightedDigraph { weights })
    }

    /// `det L` (Leibniz) against the enumerated sum.
    pub fn verify_matrix_tree(&self) -> Result<CondensationReport> {
        let lhs = self.build_laplacian()?.leibniz_det()?;
        let rhs = self.brute_arborescence_sum()?;
        Ok(CondensationReport::new(
            Theorem::Mtt,
            self.n(),
            None,
            lhs,
            rhs,
        ))
    }
}

/// Maps a tree found in `g.relabel_root(root)` back to the original labels,
/// returning `(vertex, parent)` for every vertex except `root`, sorted by vertex.
pub fn parents_in_original_labels(tree: &RootedTree, root: usize) -> Vec<(usize, usize)> {
    let n = tree.n();
    let swap = |x: usize| {
        if x == root {
            n
        } else if x == n {
            root
        } else {
            x
        }
    };
    let mut out: Vec<(usize, usize)> = tree.edges().map(|(c, p)| (swap(c), swap(p))).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::Integers
    }

    fn graph(rows: &[&[i64]]) -> WeightedDigraph {
        WeightedDigraph::new(Matrix::from_rows(&z(), rows)).unwrap()
    }

    fn path3() -> WeightedDigraph {
        graph(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])
    }

    #[test]
    fn out_strength_examples() {
        let g = WeightedDigraph::complete_unit(&z(), 3);
        assert_eq!(g.out_strength(2).unwrap(), z().from_i64(3));
        let zero = WeightedDigraph::new(Matrix::zeros(&z(), 3, 3)).unwrap();
        assert!(zero.out_strength(1).unwrap().is_zero());
        let cols = WeightedDigraph::new(Matrix::from_fn(z(), 3, 3, |_, j| z().from_i64(j as i64)))
            .unwrap();
        for i in 1..=3 {
            assert_eq!(cols.out_strength(i).unwrap(), z().from_i64(6));
        }
        assert!(g.out_strength(4).is_err());
    }

    #[test]
    fn laplacian_examples() {
        let one = WeightedDigraph::complete_unit(&z(), 1);
        let l = one.build_laplacian().unwrap();
        assert_eq!((l.rows(), l.cols()), (0, 0));
        let g = WeightedDigraph::complete_unit(&z(), 3);
        assert_eq!(
            g.build_laplacian().unwrap(),
            Matrix::from_rows(&z(), &[[2, -1], [-1, 2]])
        );

        let r = Ring::polynomial(["a", "b", "c", "d"]);
        let w = Matrix::new(
            r.clone(),
            2,
            2,
            ["a", "b", "c", "d"]
                .iter()
                .map(|s| r.var(s).unwrap())
                .collect(),
        )
        .unwrap();
        let l = WeightedDigraph::new(w).unwrap().build_laplacian().unwrap();
        assert_eq!(l.get(1, 1), &r.var("b").unwrap());
    }

    #[test]
    fn counts_on_small_graphs() {
        assert_eq!(
            WeightedDigraph::complete_unit(&z(), 1)
                .count_arborescences()
                .unwrap(),
            z().one()
        );
        assert_eq!(
            WeightedDigraph::complete_unit(&z(), 3)
                .count_arborescences()
                .unwrap(),
            z().from_i64(3)
        );
        assert_eq!(path3().count_arborescences().unwrap(), z().one());
    }

    #[test]
    fn brute_sum_examples() {
        let zero = WeightedDigraph::new(Matrix::zeros(&z(), 4, 4)).unwrap();
        assert!(zero.brute_arborescence_sum().unwrap().is_zero());
        let all = WeightedDigraph::complete_unit(&z(), 4);
        assert_eq!(all.brute_arborescence_sum().unwrap(), z().from_i64(16));
    }

    #[test]
    fn symbolic_brute_sum_n3() {
        let names: Vec<String> = (1..=3)
            .flat_map(|i| (1..=3).map(move |j| format!("w{i}_{j}")))
            .collect();
        let r = Ring::polynomial(names.clone());
        let w = Matrix::try_from_fn(r.clone(), 3, 3, |i, j| {
            Ok(r.var(&format!("w{i}_{j}")).unwrap())
        })
        .unwrap();
        let g = WeightedDigraph::new(w).unwrap();
        let m = |a: &str, b: &str| r.var(a).unwrap().mul(&r.var(b).unwrap()).unwrap();
        let expected = m("w1_3", "w2_3")
            .add(&m("w1_2", "w2_3"))
            .unwrap()
            .add(&m("w1_3", "w2_1"))
            .unwrap();
        assert_eq!(g.brute_arborescence_sum().unwrap(), expected);
        assert_eq!(g.count_arborescences().unwrap(), expected);
    }

    #[test]
    fn enumerate_examples() {
        let all: Vec<_> = WeightedDigraph::complete_unit(&z(), 3)
            .enumerate_arborescences()
            .unwrap()
            .collect();
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|(_, w)| *w == z().one()));

        let p = path3();
        let trees: Vec<_> = p.enumerate_arborescences().unwrap().collect();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].0.parents(), &[2, 3]);

        let single: Vec<_> = WeightedDigraph::complete_unit(&z(), 1)
            .enumerate_arborescences()
            .unwrap()
            .collect();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].1, z().one());
    }

    #[test]
    fn relabel_examples() {
        let g = path3();
        assert_eq!(g.relabel_root(3).unwrap(), g);
        let r1 = g.relabel_root(1).unwrap();
        assert!(r1.count_arborescences().unwrap().is_zero());
        assert!(r1.brute_arborescence_sum().unwrap().is_zero());
        let k = WeightedDigraph::complete_unit(&z(), 4);
        for v in 1..=4 {
            assert_eq!(
                k.relabel_root(v).unwrap().count_arborescences().unwrap(),
                z().from_i64(16)
            );
        }
        assert!(g.relabel_root(0).is_err());
    }

    #[test]
    fn relabeled_trees_map_back() {
        // arcs 3->2, 2->1: the only arborescence into 1
        let g = graph(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let r = g.relabel_root(1).unwrap();
        let trees: Vec<_> = r.enumerate_arborescences().unwrap().collect();
        assert_eq!(trees.len(), 1);
        assert_eq!(parents_in_original_labels(&trees[0].0, 1), [(2, 1), (3, 2)]);
    }

    #[test]
    fn arcs_sum_and_default_to_zero() {
        let g = WeightedDigraph::from_arcs(
            &z(),
            3,
            &[(1, 2, 2.into()), (1, 2, 3.into()), (2, 3, 1.into())],
        )
        .unwrap();
        assert_eq!(g.weight(1, 2), &z().from_i64(5));
        assert!(g.weight(2, 1).is_zero());
        assert!(WeightedDigraph::from_arcs(&z(), 2, &[(1, 3, 1.into())]).is_err());
    }

    #[test]
    fn composite_modulus_uses_leibniz() {
        let r = Ring::modular(6).unwrap();
        let g = WeightedDigraph::complete_unit(&r, 4);
        assert_eq!(g.count_arborescences().unwrap(), r.from_i64(16));
    }
}
