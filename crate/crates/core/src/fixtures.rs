//! Small reference complexes with known matrices.

use crate::complex::OrientedComplex;
use crate::graph::Graph;

/// Six oriented edges on five vertices with two triangles, `{2,3,4}` and
/// `{2,4,5}`. Vertex 1 is pendant.
pub const KITE_EDGE_LIST: &str = "\
# e1..e6
1 2
3 2
2 5
4 5
4 3
4 2
";

pub const K4_EDGE_LIST: &str = "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

pub fn kite() -> OrientedComplex {
    OrientedComplex::from_edge_list(KITE_EDGE_LIST).expect("fixture parses")
}

/// Edge-vertex incidence of [`kite`], columns `v1..v5`.
pub fn kite_b_rows() -> Vec<Vec<i64>> {
    vec![
        vec![-1, 1, 0, 0, 0],
        vec![0, 1, -1, 0, 0],
        vec![0, -1, 0, 0, 1],
        vec![0, 0, 0, -1, 1],
        vec![0, 0, 1, -1, 0],
        vec![0, 1, 0, -1, 0],
    ]
}

/// Triangle-edge incidence of [`kite`] with the first triangle oriented
/// `2 -> 4 -> 3` and the second `2 -> 4 -> 5`. The canonical orientation
/// (ascending vertices) flips the first row.
pub fn kite_c_rows() -> Vec<Vec<i64>> {
    vec![vec![0, 1, 0, 0, 1, -1], vec![0, 0, -1, 1, 0, -1]]
}

pub fn kite_h_rows() -> Vec<Vec<i64>> {
    vec![
        vec![2, 1, -1, 0, 0, 1],
        vec![1, 3, -1, 0, 0, 0],
        vec![-1, -1, 3, 0, 0, 0],
        vec![0, 0, 0, 3, 1, 0],
        vec![0, 0, 0, 1, 3, 0],
        vec![1, 0, 0, 0, 0, 4],
    ]
}

/// Complete graph on `1..=n` with edges oriented from smaller to larger id,
/// listed lexicographically.
pub fn complete(n: u64) -> OrientedComplex {
    let pairs = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
    OrientedComplex::new(Graph::new(1..=n, pairs).expect("simple"))
}

pub fn k3() -> OrientedComplex {
    complete(3)
}

pub fn k4() -> OrientedComplex {
    complete(4)
}

/// Cycle `1 -> 2 -> ... -> n` closed by the edge `1 -> n`.
pub fn cycle(n: u64) -> OrientedComplex {
    let pairs = (1..n).map(|u| (u, u + 1)).chain(std::iter::once((1, n)));
    OrientedComplex::new(Graph::new(1..=n, pairs).expect("simple"))
}

/// Path `1 -> 2 -> ... -> n`.
pub fn path(n: u64) -> OrientedComplex {
    OrientedComplex::new(Graph::new(1..=n, (1..n).map(|u| (u, u + 1))).expect("simple"))
}

/// Two triangles `{1,2,3}` and `{4,5,6}` joined by the cut edge `3 -> 4`.
pub fn bowtie_bridge() -> OrientedComplex {
    OrientedComplex::from_edge_list("1 2\n2 3\n1 3\n3 4\n4 5\n5 6\n4 6\n").expect("fixture parses")
}

/// One named reference comparison and whether it passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestCase {
    pub name: &'static str,
    pub passed: bool,
}

/// Reference comparisons on [`kite`] and the `K4` counterexample. Matrix
/// comparisons are exact integer equality.
pub fn selftest() -> Vec<SelftestCase> {
    use crate::helmholtzian::{assemble_entrywise, assemble_product, verify_equivalence};
    use crate::hodge::{nullity_exact, structural_nullity_checks, triangle_count_predicted, Transformation};
    use crate::incidence::{build_b, build_c};

    let kite = kite();
    let b = build_b(&kite);
    let c = build_c(&kite);
    let c_rows = c.matrix().to_rows();
    let c_up_to_sign = c_rows.len() == 2
        && c_rows.iter().zip(kite_c_rows()).all(|(ours, reference)| {
            let neg: Vec<i64> = reference.iter().map(|x| -x).collect();
            *ours == reference || *ours == neg
        });
    let product = assemble_product(&b, &c).map(|h| h.matrix().to_rows());
    let kite_report = nullity_exact(&kite);

    let k4 = k4();
    let k4_report = nullity_exact(&k4);
    let k4_subdivision = structural_nullity_checks(&k4).checks.into_iter().any(|chk| {
        matches!(chk.transformation, Transformation::Subdivision { triangle_degree: 2, .. })
            && chk.eta_after == 1
            && chk.expected_after == Some(2)
            && chk.hypothesis_failure()
    });

    vec![
        SelftestCase { name: "kite: B entry-for-entry", passed: b.matrix().to_rows() == kite_b_rows() },
        SelftestCase { name: "kite: C up to row sign", passed: c_up_to_sign },
        SelftestCase { name: "kite: H product form", passed: product == Ok(kite_h_rows()) },
        SelftestCase {
            name: "kite: H entrywise",
            passed: assemble_entrywise(&kite).matrix().to_rows() == kite_h_rows(),
        },
        SelftestCase { name: "kite: assembly equivalence", passed: verify_equivalence(&kite).holds() },
        SelftestCase {
            name: "kite: nullity 0 (exact and predicted)",
            passed: kite_report.eta_exact == 0 && kite_report.eta_predicted == 0 && kite_report.t == 2,
        },
        SelftestCase {
            name: "k4: eta_exact 0, eta_predicted -1, dependent triangles",
            passed: k4_report.eta_exact == 0
                && k4_report.eta_predicted == -1
                && !k4_report.triangles_independent,
        },
        SelftestCase {
            name: "k4: predicted triangle count 3 = rank C, enumerated 4",
            passed: triangle_count_predicted(&k4) == 3
                && k4_report.rank_c == 3
                && k4.triangle_count() == 4,
        },
        SelftestCase { name: "k4: subdivision reported as hypothesis failure (1 vs 2)", passed: k4_subdivision },
    ]
}
