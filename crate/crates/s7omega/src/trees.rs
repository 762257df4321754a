//! Labeled trees on the vertex set [n]: Pruefer-sequence coding and
//! enumeration, weighted sums over all trees, and the weighted Laplacian
//! minor whose determinant equals the tree sum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::idx::{pair_index, pairs};
use crate::linalg::IntMatrix;
use crate::poly::{IntPolynomial, PolyRing};

/// Default cap on the number of vertices for full tree enumeration
/// (9^7 = 4,782,969 trees).
pub const DEFAULT_TREE_BUDGET: usize = 9;

/// A tree on vertices 1..=n: exactly n-1 edges, connected, acyclic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LabeledTree {
    n: usize,
    /// Edges (p, q) with p < q, sorted lexicographically.
    edges: Vec<(usize, usize)>,
}

impl LabeledTree {
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> Result<LabeledTree> {
        if n < 2 {
            return Err(Error::argument("a tree needs at least 2 vertices"));
        }
        if edges.len() != n - 1 {
            return Err(Error::argument(format!(
                "a tree on {n} vertices has {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        for e in edges.iter_mut() {
            let (p, q) = *e;
            if p == q || p < 1 || q < 1 || p > n || q > n {
                return Err(Error::argument(format!("bad edge {{{p},{q}}}")));
            }
            *e = (p.min(q), p.max(q));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::argument("duplicate edge"));
        }
        if !is_connected(n, &edges) {
            return Err(Error::argument(
                "edge set is not connected, hence not a tree",
            ));
        }
        Ok(LabeledTree { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    let mut components = n;
    for &(p, q) in edges {
        let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
        if rp != rq {
            parent[rp] = rq;
            components -= 1;
        }
    }
    components == 1
}

/// Decodes a Pruefer sequence (length n-2, labels in [n]) into its tree.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Result<LabeledTree> {
    if n < 2 {
        return Err(Error::argument("need n >= 2"));
    }
    if seq.len() != n - 2 {
        return Err(Error::argument(format!(
            "sequence for n = {n} must have length {}, got {}",
            n - 2,
            seq.len()
        )));
    }
    if let Some(&bad) = seq.iter().find(|&&s| s < 1 || s > n) {
        return Err(Error::argument(format!("label {bad} out of 1..={n}")));
    }
    let mut degree = vec![1u32; n + 1];
    let mut edges = Vec::with_capacity(n - 1);
    decode_into(n, seq, &mut degree, &mut edges);
    Ok(LabeledTree { n, edges })
}

/// Linear-time decode into a reusable edge buffer. `degree` must have
/// length n+1 and is overwritten; edges come out with p < q but unsorted.
fn decode_into(n: usize, seq: &[usize], degree: &mut [u32], edges: &mut Vec<(usize, usize)>) {
    for d in degree.iter_mut() {
        *d = 1;
    }
    for &s in seq {
        degree[s] += 1;
    }
    edges.clear();
    let mut ptr = 1;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &s in seq {
        edges.push((leaf.min(s), leaf.max(s)));
        degree[s] -= 1;
        if degree[s] == 1 && s < ptr {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n));
}

/// Pruefer sequence of a tree: repeatedly strip the smallest leaf and
/// record its neighbour. Inverse of `prufer_decode`.
pub fn prufer_encode(tree: &LabeledTree) -> Vec<usize> {
    let n = tree.n;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for &(p, q) in &tree.edges {
        adj[p].push(q);
        adj[q].push(p);
    }
    let mut alive = vec![true; n + 1];
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut leaves: std::collections::BTreeSet<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    let mut seq = Vec::with_capacity(n.saturating_sub(2));
    for _ in 0..n.saturating_sub(2) {
        let leaf = *leaves.iter().next().expect("a tree always has a leaf");
        leaves.remove(&leaf);
        alive[leaf] = false;
        let nb = *adj[leaf]
            .iter()
            .find(|&&v| alive[v])
            .expect("leaf has a live neighbour");
        seq.push(nb);
        degree[nb] -= 1;
        if degree[nb] == 1 {
            leaves.insert(nb);
        }
    }
    seq
}

/// All trees on [n] in lexicographic Pruefer order; yields exactly
/// n^(n-2) trees.
pub fn enumerate_trees(n: usize) -> Result<TreeEnumeration> {
    if n < 2 {
        return Err(Error::argument("need n >= 2"));
    }
    Ok(TreeEnumeration {
        n,
        seq: Some(vec![1; n - 2]),
    })
}

pub struct TreeEnumeration {
    n: usize,
    seq: Option<Vec<usize>>,
}

impl Iterator for TreeEnumeration {
    type Item = LabeledTree;

    fn next(&mut self) -> Option<LabeledTree> {
        let seq = self.seq.as_mut()?;
        let tree = prufer_decode(self.n, seq).expect("odometer stays in range");
        // Advance the odometer, most significant digit first for lex order.
        let mut i = seq.len();
        loop {
            if i == 0 {
                self.seq = None;
                break;
            }
            i -= 1;
            if seq[i] < self.n {
                seq[i] += 1;
                for slot in &mut seq[i + 1..] {
                    *slot = 1;
                }
                break;
            }
        }
        Some(tree)
    }
}

/// A positive-weight system on the edges of the complete graph on [n].
#[derive(Clone, Debug)]
pub struct EdgeWeights {
    n: usize,
    /// Weight of each unordered pair, lexicographic.
    w: Vec<BigInt>,
}

impl EdgeWeights {
    pub fn new(n: usize, mut weight: impl FnMut(usize, usize) -> BigInt) -> Result<EdgeWeights> {
        if n < 2 {
            return Err(Error::argument("need n >= 2"));
        }
        Ok(EdgeWeights {
            n,
            w: pairs(n).map(|(p, q)| weight(p, q)).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, p: usize, q: usize) -> &BigInt {
        assert!(p != q && 1 <= p.min(q) && p.max(q) <= self.n);
        &self.w[pair_index(self.n, p.min(q), p.max(q))]
    }
}

/// Sum over all trees on [n] of the product of edge weights, by full
/// Pruefer-space enumeration.
pub fn tree_order_sum(w: &EdgeWeights) -> BigInt {
    let n = w.n;
    let mut acc = BigInt::zero();
    let mut degree = vec![1u32; n + 1];
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n - 1);
    let mut seq = vec![1usize; n - 2];
    loop {
        decode_into(n, &seq, &mut degree, &mut edges);
        let mut prod = BigInt::one();
        for &(p, q) in &edges {
            prod *= &w.w[pair_index(n, p, q)];
        }
        acc += prod;
        // Next sequence in lex order.
        let mut i = seq.len();
        loop {
            if i == 0 {
                return acc;
            }
            i -= 1;
            if seq[i] < n {
                seq[i] += 1;
                for slot in &mut seq[i + 1..] {
                    *slot = 1;
                }
                break;
            }
        }
    }
}

/// gcd of the edge-weight products over all trees on [n]. Stops early
/// once the gcd reaches 1.
pub fn gcd_over_tree_products(w: &EdgeWeights) -> BigInt {
    let n = w.n;
    let mut acc = BigInt::zero();
    let mut degree = vec![1u32; n + 1];
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n - 1);
    let mut seq = vec![1usize; n - 2];
    loop {
        decode_into(n, &seq, &mut degree, &mut edges);
        let mut prod = BigInt::one();
        for &(p, q) in &edges {
            prod *= &w.w[pair_index(n, p, q)];
        }
        acc = acc.gcd(&prod);
        if acc.is_one() {
            return acc;
        }
        let mut i = seq.len();
        loop {
            if i == 0 {
                return acc;
            }
            i -= 1;
            if seq[i] < n {
                seq[i] += 1;
                for slot in &mut seq[i + 1..] {
                    *slot = 1;
                }
                break;
            }
        }
    }
}

fn check_ordering(n: usize, ordering: &[usize]) -> Result<()> {
    let mut seen = vec![false; n + 1];
    if ordering.len() != n {
        return Err(Error::argument(format!(
            "ordering must list all of 1..={n}"
        )));
    }
    for &a in ordering {
        if a < 1 || a > n || seen[a] {
            return Err(Error::argument(format!(
                "ordering is not a permutation of 1..={n}"
            )));
        }
        seen[a] = true;
    }
    Ok(())
}

/// The (n-1) x (n-1) weighted Laplacian minor for the given vertex
/// ordering a1, ..., an: row and column l correspond to vertex a_(l+1),
/// the diagonal entry sums the weights from that vertex to all others,
/// and the off-diagonal entries are the negated weights.
pub fn laplacian_minor(w: &EdgeWeights, ordering: &[usize]) -> Result<IntMatrix> {
    let n = w.n;
    check_ordering(n, ordering)?;
    let mut m = IntMatrix::zeros(n - 1, n - 1);
    for l in 0..n - 1 {
        for c in 0..n - 1 {
            if l == c {
                let vertex = ordering[c + 1];
                let mut sum = BigInt::zero();
                for &other in ordering.iter() {
                    if other != vertex {
                        sum += w.weight(other, vertex);
                    }
                }
                m[(l, c)] = sum;
            } else {
                m[(l, c)] = -w.weight(ordering[l + 1], ordering[c + 1]);
            }
        }
    }
    Ok(m)
}

/// Identity ordering 1, 2, ..., n.
pub fn identity_ordering(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

/// Whether det(laplacian_minor) equals the enumerated tree sum.
/// Enumeration cost is n^(n-2), so n is capped by `budget`.
pub fn matrix_tree_check(w: &EdgeWeights, budget: usize) -> Result<bool> {
    if w.n > budget {
        return Err(Error::resource(format!(
            "tree enumeration for n = {} exceeds the budget of n <= {budget}",
            w.n
        )));
    }
    let m = laplacian_minor(w, &identity_ordering(w.n))?;
    Ok(m.det_exact()? == tree_order_sum(w))
}

/// The symbolic weighted Laplacian minor over Z[X_ab], entries indexed by
/// the given vertex ordering.
pub fn symbolic_laplacian_minor(
    n: usize,
    ordering: &[usize],
) -> Result<Vec<Vec<IntPolynomial>>> {
    check_ordering(n, ordering)?;
    let ring = PolyRing::pair_ring(n);
    let var = |p: usize, q: usize| ring.var(pair_index(n, p.min(q), p.max(q)));
    let mut rows = Vec::with_capacity(n - 1);
    for l in 0..n - 1 {
        let mut row = Vec::with_capacity(n - 1);
        for c in 0..n - 1 {
            if l == c {
                let vertex = ordering[c + 1];
                let mut sum = ring.zero();
                for &other in ordering.iter() {
                    if other != vertex {
                        sum = sum.add(&var(other, vertex))?;
                    }
                }
                row.push(sum);
            } else {
                row.push(var(ordering[l + 1], ordering[c + 1]).neg());
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Laplace expansion along the first row; fine for the small symbolic
/// matrices used here.
pub fn symbolic_det(m: &[Vec<IntPolynomial>], ring: &PolyRing) -> IntPolynomial {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = ring.zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<IntPolynomial>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[i][c].clone())
                    .collect()
            })
            .collect();
        let cofactor = m[0][j].mul(&symbolic_det(&sub, ring)).expect("same ring");
        acc = if j % 2 == 0 {
            acc.add(&cofactor).expect("same ring")
        } else {
            acc.sub(&cofactor).expect("same ring")
        };
    }
    acc
}

/// The tree polynomial: sum over all trees on [n] of the product of the
/// X_ab along the tree's edges.
pub fn symbolic_tree_polynomial(n: usize) -> Result<IntPolynomial> {
    let ring = PolyRing::pair_ring(n);
    let mut acc = ring.zero();
    for tree in enumerate_trees(n)? {
        let mut exps = vec![0u32; ring.num_vars()];
        for &(p, q) in tree.edges() {
            exps[pair_index(n, p, q)] = 1;
        }
        acc = acc.add(&ring.monomial(exps, BigInt::one()))?;
    }
    Ok(acc)
}

/// Checks det(M) = tree polynomial as an identity in Z[X_ab], and that
/// every monomial of the determinant is squarefree of degree n-1.
/// Symbolic determinant cost caps n at 5.
pub fn symbolic_matrix_tree(n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::argument("need n >= 2"));
    }
    if n > 5 {
        return Err(Error::resource(format!(
            "symbolic matrix-tree check is capped at n <= 5, got {n}"
        )));
    }
    let ring = PolyRing::pair_ring(n);
    let m = symbolic_laplacian_minor(n, &identity_ordering(n))?;
    let det = symbolic_det(&m, &ring);
    let squarefree = det.terms().all(|(exps, _)| {
        exps.iter().all(|&e| e <= 1) && exps.iter().sum::<u32>() == (n - 1) as u32
    });
    Ok(squarefree && det.equal(&symbolic_tree_polynomial(n)?)?)
}
