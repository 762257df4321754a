//! Index helpers for the 1-based vertex set [n] = {1, ..., n} used
//! throughout the public API.

/// Position of the unordered pair {p, q} (1 <= p < q <= n) in the
/// lexicographic list (1,2), (1,3), ..., (1,n), (2,3), ...
pub fn pair_index(n: usize, p: usize, q: usize) -> usize {
    debug_assert!(1 <= p && p < q && q <= n);
    (p - 1) * n - p * (p - 1) / 2 + (q - p - 1)
}

/// Unordered pairs of [n] in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |p| (p + 1..=n).map(move |q| (p, q)))
}

/// Unordered triples of [n] in lexicographic order.
pub fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (1..=n).flat_map(move |p| {
        (p + 1..=n).flat_map(move |q| (q + 1..=n).map(move |r| (p, q, r)))
    })
}

/// Unordered 4-element subsets of [n] in lexicographic order.
pub fn quadruples(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    triples(n).flat_map(move |(p, q, r)| (r + 1..=n).map(move |s| (p, q, r, s)))
}

/// Pairs with repetition (i, j), 1 <= i <= j <= k, lexicographic. These
/// index the degree-2 monomial basis x_i x_j.
pub fn sym_pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=k).flat_map(move |i| (i..=k).map(move |j| (i, j)))
}

/// Position of (i, j), i <= j, in the `sym_pairs` list.
pub fn sym_pair_index(k: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i <= j && j <= k);
    (i - 1) * (k + 1) - i * (i - 1) / 2 + (j - i)
}
