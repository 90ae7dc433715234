//! The Helmholtzian `H = B Bᵀ + Cᵀ C`, indexed by edges.
//!
//! Two assembly routes are kept side by side. [`assemble_entrywise`] reads
//! every entry off local adjacency:
//!
//! * `h(e, e) = △(e) + 2`
//! * `h(e, e') = -1` when one edge's head is the other's tail and the two do
//!   not lie on a common triangle
//! * `h(e, e') = +1` when they share a head or share a tail and do not lie on
//!   a common triangle
//! * `0` otherwise
//!
//! [`assemble_product`] multiplies the incidence matrices and serves as the
//! oracle for the first.

use serde::Serialize;

use crate::complex::OrientedComplex;
use crate::error::{Error, Result};
use crate::incidence::{build_b, build_c, EdgeVertexIncidence, TriangleEdgeIncidence};
use crate::matrix::{IntMatrix, Layout};

/// Edge count up to which `H` is stored dense.
pub const DENSE_EDGE_LIMIT: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ProductForm,
    Entrywise,
    VerifiedBoth,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HelmholtzianMatrix {
    matrix: IntMatrix,
    provenance: Provenance,
}

impl HelmholtzianMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn edge_count(&self) -> usize {
        self.matrix.rows()
    }
}

fn layout_for(m: usize) -> Layout {
    if m <= DENSE_EDGE_LIMIT {
        Layout::Dense
    } else {
        Layout::Sparse
    }
}

/// `B Bᵀ + Cᵀ C` in exact integer arithmetic.
pub fn assemble_product(
    b: &EdgeVertexIncidence,
    c: &TriangleEdgeIncidence,
) -> Result<HelmholtzianMatrix> {
    let (b, c) = (b.matrix(), c.matrix());
    if b.rows() != c.cols() {
        return Err(Error::DimensionMismatch { expected: b.rows(), found: c.cols() });
    }
    let down = b.matmul(&b.transpose())?;
    let up = c.transpose().matmul(c)?;
    let sum = down.add(&up)?;
    Ok(HelmholtzianMatrix { matrix: sum.to_layout(layout_for(b.rows())), provenance: Provenance::ProductForm })
}

/// `H` from the adjacency relations of edges, without forming `B` or `C`.
pub fn assemble_entrywise(c: &OrientedComplex) -> HelmholtzianMatrix {
    let g = c.graph();
    let m = g.edge_count();
    let edges = g.edges();
    let mut triplets = Vec::new();
    for (e, &edge) in edges.iter().enumerate() {
        triplets.push((e, e, c.triangle_degrees()[e] as i64 + 2));
        for v in [edge.tail, edge.head] {
            let x = edge.other(v);
            for &y in g.neighbors(v) {
                if y == x {
                    continue;
                }
                // the edges vx and vy lie on a common triangle iff x ~ y
                if g.is_adjacent(x, y) {
                    continue;
                }
                let f = g.edge_between(v, y).expect("neighbor edge");
                let other = edges[f];
                let same_role = (edge.head == v) == (other.head == v);
                triplets.push((e, f, if same_role { 1 } else { -1 }));
            }
        }
    }
    HelmholtzianMatrix {
        matrix: IntMatrix::from_triplets(m, m, triplets, layout_for(m)),
        provenance: Provenance::Entrywise,
    }
}

/// Default assembly route.
pub fn assemble(c: &OrientedComplex) -> HelmholtzianMatrix {
    assemble_entrywise(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub row: usize,
    pub col: usize,
    /// Product-form value.
    pub expected: i64,
    /// Entrywise value.
    pub got: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub first_discrepancy: Option<Discrepancy>,
    /// The agreed matrix tagged [`Provenance::VerifiedBoth`], when equal.
    pub verified: Option<HelmholtzianMatrix>,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        self.first_discrepancy.is_none()
    }
}

/// Assembles both ways and compares entry by entry in row-major order.
pub fn verify_equivalence(c: &OrientedComplex) -> Equivalence {
    let product = assemble_product(&build_b(c), &build_c(c)).expect("incidence shapes agree");
    let entrywise = assemble_entrywise(c);
    let m = c.edge_count();
    let first_discrepancy = (0..m)
        .flat_map(|r| (0..m).map(move |col| (r, col)))
        .find_map(|(row, col)| {
            let expected = product.matrix.get(row, col);
            let got = entrywise.matrix.get(row, col);
            (expected != got).then_some(Discrepancy { row, col, expected, got })
        });
    let verified = first_discrepancy
        .is_none()
        .then_some(HelmholtzianMatrix { matrix: entrywise.matrix, provenance: Provenance::VerifiedBoth });
    Equivalence { first_discrepancy, verified }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generate::arb_graph;
    use crate::linalg::symmetric_eigenvalues;
    use proptest::prelude::*;

    fn product(c: &OrientedComplex) -> IntMatrix {
        assemble_product(&build_b(c), &build_c(c)).unwrap().into_matrix()
    }

    #[test]
    fn kite_matches_reference_matrix() {
        let c = fixtures::kite();
        let reference = fixtures::kite_h_rows();
        assert_eq!(product(&c).to_rows(), reference);
        assert_eq!(assemble_entrywise(&c).matrix().to_rows(), reference);
        let eq = verify_equivalence(&c);
        assert!(eq.holds());
        assert_eq!(eq.verified.unwrap().provenance(), Provenance::VerifiedBoth);
    }

    #[test]
    fn small_cases() {
        let k3 = fixtures::k3();
        let three = IntMatrix::from_triplets(3, 3, (0..3).map(|i| (i, i, 3)), Layout::Dense);
        assert_eq!(product(&k3), three);
        assert_eq!(assemble_entrywise(&k3).matrix().get(0, 1), 0);

        let path = OrientedComplex::from_edge_list("1 2\n2 3").unwrap();
        assert_eq!(product(&path).to_rows(), vec![vec![2, -1], vec![-1, 2]]);

        let disjoint = OrientedComplex::from_edge_list("1 2\n3 4").unwrap();
        assert_eq!(assemble_entrywise(&disjoint).matrix().get(0, 1), 0);

        let empty = OrientedComplex::new(crate::graph::Graph::new(1..=3, []).unwrap());
        let eq = verify_equivalence(&empty);
        assert!(eq.holds());
        assert_eq!(eq.verified.unwrap().edge_count(), 0);
    }

    #[test]
    fn shape_mismatch() {
        let a = fixtures::k3();
        let b = fixtures::k4();
        assert!(assemble_product(&build_b(&a), &build_c(&b)).is_err());
    }

    proptest! {
        #[test]
        fn entrywise_equals_product(g in arb_graph(9)) {
            let c = OrientedComplex::new(g);
            let eq = verify_equivalence(&c);
            prop_assert!(eq.holds(), "{:?}", eq.first_discrepancy);
        }

        #[test]
        fn triangle_orientation_is_irrelevant(g in arb_graph(9), flips in prop::collection::vec(any::<bool>(), 84)) {
            let c = OrientedComplex::new(g);
            let b = build_b(&c);
            let cm = build_c(&c).into_matrix();
            let rows: Vec<usize> = (0..cm.rows()).filter(|&r| flips[r]).collect();
            let flipped = cm.negate_rows(&rows);
            let up = flipped.transpose().matmul(&flipped).unwrap();
            let h = b.matrix().matmul(&b.matrix().transpose()).unwrap().add(&up).unwrap();
            prop_assert_eq!(h, assemble_entrywise(&c).into_matrix());
        }

        #[test]
        fn structure_and_quadratic_form(g in arb_graph(9), xs in prop::collection::vec(-4i64..=4, 36)) {
            let c = OrientedComplex::new(g);
            let h = assemble(&c).into_matrix();
            let m = c.edge_count();
            prop_assert!(h.is_symmetric());
            let mut trace = 0;
            for e in 0..m {
                prop_assert_eq!(h.get(e, e), c.triangle_degree(e).unwrap() as i64 + 2);
                trace += h.get(e, e);
                for f in 0..m {
                    if f != e {
                        prop_assert!((-1..=1).contains(&h.get(e, f)));
                    }
                }
            }
            prop_assert_eq!(trace, 2 * m as i64 + 3 * c.triangle_count() as i64);

            let x = &xs[..m];
            let hx = h.mul_vec_i64(x).unwrap();
            let quad: i64 = x.iter().zip(&hx).map(|(a, b)| a * b).sum();
            let b = build_b(&c).into_matrix();
            let cm = build_c(&c).into_matrix();
            let btx = b.transpose().mul_vec_i64(x).unwrap();
            let cx = cm.mul_vec_i64(x).unwrap();
            let norms: i64 = btx.iter().map(|v| v * v).sum::<i64>() + cx.iter().map(|v| v * v).sum::<i64>();
            prop_assert_eq!(quad, norms);
        }

        #[test]
        fn orientation_covariance(g in arb_graph(8), flips in prop::collection::vec(any::<bool>(), 28)) {
            let c = OrientedComplex::new(g.clone());
            let flip: Vec<usize> = (0..g.edge_count()).filter(|&e| flips[e]).collect();
            let c2 = OrientedComplex::new(g.with_flipped_edges(&flip).unwrap());
            let h = assemble(&c).into_matrix();
            let h2 = assemble(&c2).into_matrix();
            let sign = |e: usize| if flip.contains(&e) { -1 } else { 1 };
            for (r, col, v) in h.triplets() {
                prop_assert_eq!(h2.get(r, col), sign(r) * v * sign(col));
            }
            let l1 = symmetric_eigenvalues(&h, 1e-12).unwrap();
            let l2 = symmetric_eigenvalues(&h2, 1e-12).unwrap();
            let scale = l1.last().copied().unwrap_or(1.0).max(1.0);
            for (a, b) in l1.iter().zip(&l2) {
                prop_assert!((a - b).abs() <= 1e-9 * scale);
            }
        }
    }
}
