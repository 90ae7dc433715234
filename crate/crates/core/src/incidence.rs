//! Incidence matrices `B` (edge × vertex) and `C` (triangle × edge), and the
//! cochain operators grad, curl and div applied directly from their
//! definitions on oriented edges and triangles.

use serde::{Deserialize, Serialize};

use crate::complex::OrientedComplex;
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, Layout};

/// `B`: row per edge, column per vertex; `-1` at the tail, `+1` at the head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeVertexIncidence(IntMatrix);

/// `C`: row per triangle, column per edge; `+1` where the edge runs along the
/// triangle's orientation, `-1` where it runs against it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleEdgeIncidence(IntMatrix);

macro_rules! matrix_newtype {
    ($name:ident) => {
        impl $name {
            pub fn matrix(&self) -> &IntMatrix {
                &self.0
            }

            pub fn into_matrix(self) -> IntMatrix {
                self.0
            }
        }

        impl AsRef<IntMatrix> for $name {
            fn as_ref(&self) -> &IntMatrix {
                &self.0
            }
        }
    };
}

matrix_newtype!(EdgeVertexIncidence);
matrix_newtype!(TriangleEdgeIncidence);

pub fn build_b(c: &OrientedComplex) -> EdgeVertexIncidence {
    let g = c.graph();
    let triplets = g
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(i, e)| [(i, e.tail, -1), (i, e.head, 1)]);
    EdgeVertexIncidence(IntMatrix::from_triplets(
        g.edge_count(),
        g.vertex_count(),
        triplets,
        Layout::Auto,
    ))
}

pub fn build_c(c: &OrientedComplex) -> TriangleEdgeIncidence {
    let g = c.graph();
    let mut triplets = Vec::with_capacity(3 * c.triangle_count());
    for (t, tri) in c.triangles().iter().enumerate() {
        for e in c.triangle_edges(t) {
            let sign = tri.orientation_of(g.edges()[e]).expect("edge lies on its triangle");
            triplets.push((t, e, sign));
        }
    }
    TriangleEdgeIncidence(IntMatrix::from_triplets(
        c.triangle_count(),
        g.edge_count(),
        triplets,
        Layout::Auto,
    ))
}

macro_rules! cochain {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(Vec<f64>);

        impl $name {
            /// Fails on NaN or infinite entries.
            pub fn new(values: Vec<f64>) -> Result<Self> {
                if let Some(i) = values.iter().position(|v| !v.is_finite()) {
                    return Err(Error::NonFinite(i));
                }
                Ok($name(values))
            }

            pub fn zeros(len: usize) -> Self {
                $name(vec![0.0; len])
            }

            pub fn values(&self) -> &[f64] {
                &self.0
            }

            pub fn into_values(self) -> Vec<f64> {
                self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }
        }
    };
}

cochain!(
    /// 0-cochain: one value per vertex, in ascending id order.
    VertexPotential
);
cochain!(
    /// 1-cochain: one value per edge, measured along the edge's orientation.
    /// The value on the reversed edge is the negation.
    EdgeFlow
);
cochain!(
    /// 2-cochain: one value per triangle in its stored orientation.
    TriangleCochain
);

impl EdgeFlow {
    /// Flow from vertex index `i` to `j`; zero if they are not adjacent.
    pub fn along(&self, c: &OrientedComplex, i: usize, j: usize) -> f64 {
        let g = c.graph();
        match g.edge_between(i, j) {
            Some(e) if g.edges()[e].tail == i => self.0[e],
            Some(e) => -self.0[e],
            None => 0.0,
        }
    }
}

fn expect_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `(grad p)(i, j) = p(j) - p(i)` on every oriented edge `i -> j`.
pub fn grad(c: &OrientedComplex, p: &VertexPotential) -> Result<EdgeFlow> {
    expect_len(c.vertex_count(), p.len())?;
    let values = c.graph().edges().iter().map(|e| p.0[e.head] - p.0[e.tail]).collect();
    Ok(EdgeFlow(values))
}

/// `(curl f)(a, b, c) = f(a, b) + f(b, c) + f(c, a)` on every triangle.
pub fn curl(c: &OrientedComplex, f: &EdgeFlow) -> Result<TriangleCochain> {
    expect_len(c.edge_count(), f.len())?;
    let values = c
        .triangles()
        .iter()
        .map(|t| t.arcs().iter().map(|&(i, j)| f.along(c, i, j)).sum())
        .collect();
    Ok(TriangleCochain(values))
}

/// `(div f)(i) = Σ_j f(i, j)`: total flow leaving `i` minus total flow
/// entering it. As a matrix this is `-Bᵀ f`, so `div = -grad*`.
pub fn div(c: &OrientedComplex, f: &EdgeFlow) -> Result<VertexPotential> {
    expect_len(c.edge_count(), f.len())?;
    let g = c.graph();
    let values = (0..g.vertex_count())
        .map(|i| g.neighbors(i).iter().map(|&j| f.along(c, i, j)).sum())
        .collect();
    Ok(VertexPotential(values))
}
