//! Random graph generators. All take an explicit RNG so runs are
//! reproducible from a seed.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, VertexId};

/// Erdős–Rényi `G(n, p)` on vertex ids `1..=n`, edges oriented from smaller
/// to larger id and listed lexicographically.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let n = n as VertexId;
    let mut pairs = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::new(1..=n, pairs).expect("generated graph is simple")
}

/// Reverses each edge independently with probability 1/2.
pub fn random_orientation<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Graph {
    let flip: Vec<usize> = (0..g.edge_count()).filter(|_| rng.gen_bool(0.5)).collect();
    g.with_flipped_edges(&flip).expect("indices in range")
}

/// Same graph with its edge list in random order.
pub fn shuffle_edges<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Graph {
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(rng);
    let pairs = order.iter().map(|&e| g.edge_ids(e).expect("in range"));
    Graph::new(g.vertex_ids().iter().copied(), pairs).expect("permutation keeps the graph simple")
}

/// Uniform labelled tree on `1..=n` decoded from a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let sequence: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    tree_from_prufer(n, &sequence)
}

/// Decodes a Prüfer sequence over vertex indices `0..n` into a tree on ids
/// `1..=n`. Edges are oriented from smaller to larger id.
pub fn tree_from_prufer(n: usize, sequence: &[usize]) -> Graph {
    assert!(n >= 1);
    assert_eq!(sequence.len(), n.saturating_sub(2));
    let mut degree = vec![1usize; n];
    for &s in sequence {
        degree[s] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut pairs = Vec::with_capacity(n.saturating_sub(1));
    for &s in sequence {
        let leaf = *leaves.iter().next().expect("a leaf always exists");
        leaves.remove(&leaf);
        pairs.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    if n >= 2 {
        let rest: Vec<usize> = leaves.into_iter().collect();
        pairs.push((rest[0], rest[1]));
    }
    let id = |v: usize| v as VertexId + 1;
    Graph::with_default_orientation(1..=n as VertexId, pairs.into_iter().map(|(a, b)| (id(a), id(b))))
        .expect("tree is simple")
}

#[cfg(test)]
pub(crate) fn arb_graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), prop::collection::vec(any::<bool>(), pairs), prop::collection::vec(any::<bool>(), pairs))
        })
        .prop_flat_map(|(n, keep, flip)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 1..=n as VertexId {
                for v in u + 1..=n as VertexId {
                    if keep[k] {
                        edges.push(if flip[k] { (v, u) } else { (u, v) });
                    }
                    k += 1;
                }
            }
            (Just(n), Just(edges).prop_shuffle())
        })
        .prop_map(|(n, edges)| Graph::new(1..=n as VertexId, edges).expect("simple"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trees_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..30 {
            let t = random_tree(n, &mut rng);
            assert_eq!(t.vertex_count(), n);
            assert_eq!(t.edge_count(), n - 1);
            assert_eq!(t.component_count(), 1);
        }
    }

    #[test]
    fn prufer_decoding() {
        // sequence [3,3,3] over 0..5 is the star centred on index 3
        let t = tree_from_prufer(5, &[3, 3, 3]);
        let centre = t.index_of(4).unwrap();
        assert_eq!(t.degree(centre), 4);
        let p = tree_from_prufer(4, &[1, 2]);
        assert_eq!(p.to_edge_list(), "1 2\n2 3\n3 4\n");
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = gnp(9, 0.5, &mut ChaCha8Rng::seed_from_u64(3));
        let b = gnp(9, 0.5, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
        assert_eq!(gnp(6, 1.0, &mut ChaCha8Rng::seed_from_u64(0)).edge_count(), 15);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let o = random_orientation(&a, &mut rng);
        assert_eq!(o.edge_count(), a.edge_count());
        let s = shuffle_edges(&a, &mut rng);
        assert_eq!(s.edge_count(), a.edge_count());
    }
}
