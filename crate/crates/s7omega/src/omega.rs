//! The input matrices Omega: deleted-rows minors Delta_pq, the reduction
//! condition, the sign system eps^p_q, kernel vectors, Pluecker checks,
//! and the adjacency cycle.
//!
//! Rows and columns are 1-based in this module's API, matching the usual
//! notation Delta_pq, eps^p_q for p, q in [k+2].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::idx::{pair_index, pairs};
use crate::linalg::IntMatrix;

/// A (k+2) x k integer matrix with all deleted-rows minors precomputed
/// and the reduction condition evaluated once at construction.
#[derive(Clone, Debug)]
pub struct OmegaMatrix {
    k: usize,
    entries: IntMatrix,
    /// Delta_pq for unordered pairs {p, q} in lexicographic order.
    minors: Vec<BigInt>,
    report: ConditionReport,
}

/// Outcome of checking the reduction condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    /// Every Delta_pq is nonzero.
    pub nonzero_ok: bool,
    /// For every p, gcd over q != p of |Delta_pq| is 1.
    pub gcd_ok: bool,
    /// Pairs {p, q} with Delta_pq = 0.
    pub failing_pairs: Vec<(usize, usize)>,
    /// Rows p whose minor gcd exceeds 1, with the offending gcd.
    pub failing_rows: Vec<(usize, BigInt)>,
}

impl ConditionReport {
    pub fn is_valid(&self) -> bool {
        self.nonzero_ok && self.gcd_ok
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid: all Delta_pq nonzero, all row gcds 1");
        }
        writeln!(f, "invalid:")?;
        for &(p, q) in &self.failing_pairs {
            writeln!(f, "  Delta_{{{p},{q}}} = 0")?;
        }
        for (p, g) in &self.failing_rows {
            writeln!(f, "  row {p}: gcd of |Delta_pq| over q != {p} is {g}")?;
        }
        Ok(())
    }
}

/// The signs eps^p_q = (-1)^(p+q) sign(p-q) sign(Delta_pq), antisymmetric.
#[derive(Clone, Debug)]
pub struct SignSystem {
    n: usize,
    /// Stored for p < q only; the other order is obtained by antisymmetry.
    upper: Vec<i8>,
}

impl SignSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    /// eps^p_q for distinct p, q in [n].
    pub fn eps(&self, p: usize, q: usize) -> i8 {
        assert!(p != q && 1 <= p.min(q) && p.max(q) <= self.n, "eps({p},{q})");
        if p < q {
            self.upper[pair_index(self.n, p, q)]
        } else {
            -self.upper[pair_index(self.n, q, p)]
        }
    }

    /// The orientation class Or_pqr = eps^p_q eps^q_r eps^r_p.
    pub fn orientation(&self, p: usize, q: usize, r: usize) -> i8 {
        self.eps(p, q) * self.eps(q, r) * self.eps(r, p)
    }
}

/// Adjacency graph of a validated Omega: edge {p, q} present when
/// eps^p_r eps^q_r takes a single value over all r outside {p, q}.
#[derive(Clone, Debug)]
pub struct AdjacencyGraph {
    /// Edges with p < q, lexicographic.
    pub edges: Vec<(usize, usize)>,
    /// k = 1 leaves nothing to vary over, so every pair is adjacent and
    /// the graph is the full triangle on {1, 2, 3}.
    pub degenerate: bool,
}

impl AdjacencyGraph {
    /// Vertices in cycle order starting from 1, taking the smaller
    /// neighbour first. Only meaningful when the graph is a single cycle.
    pub fn cycle_vertices(&self) -> Vec<usize> {
        let n = self.edges.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for &(p, q) in &self.edges {
            adj[p].push(q);
            adj[q].push(p);
        }
        for nb in adj.iter_mut() {
            nb.sort_unstable();
        }
        let mut order = vec![1usize];
        let mut prev = 0usize;
        while order.len() < n {
            let cur = *order.last().expect("nonempty");
            let next = *adj[cur]
                .iter()
                .find(|&&v| v != prev)
                .expect("cycle vertex has two neighbours");
            order.push(next);
            prev = cur;
        }
        order
    }
}

impl OmegaMatrix {
    /// Builds the matrix, computing all (k+2)(k+1)/2 minors and the
    /// condition report up front.
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<OmegaMatrix> {
        let entries = IntMatrix::from_rows(rows).map_err(|_| {
            Error::argument("matrix rows have unequal lengths")
        })?;
        Self::from_int_matrix(entries)
    }

    pub fn from_int_matrix(entries: IntMatrix) -> Result<OmegaMatrix> {
        let (r, c) = (entries.rows(), entries.cols());
        if c < 1 || r != c + 2 {
            return Err(Error::argument(format!(
                "expected a (k+2) x k matrix with k >= 1, got {r} x {c}"
            )));
        }
        let k = c;
        let n = k + 2;
        let mut minors = Vec::with_capacity(n * (n - 1) / 2);
        for (p, q) in pairs(n) {
            minors.push(deleted_rows_det(&entries, p, q)?);
        }
        let report = condition_report(n, &minors);
        Ok(OmegaMatrix {
            k,
            entries,
            minors,
            report,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<OmegaMatrix> {
        OmegaMatrix::new(
            rows.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of rows, k + 2.
    pub fn n(&self) -> usize {
        self.k + 2
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    /// Entry Omega_pi with 1-based row p in [k+2] and column i in [k].
    pub fn entry(&self, p: usize, i: usize) -> &BigInt {
        assert!(1 <= p && p <= self.n() && 1 <= i && i <= self.k);
        &self.entries[(p - 1, i - 1)]
    }

    /// Delta_pq: determinant of the matrix with rows p and q deleted.
    /// Symmetric in p and q.
    pub fn minor(&self, p: usize, q: usize) -> Result<&BigInt> {
        let n = self.n();
        if p == q {
            return Err(Error::argument(format!("minor({p},{q}): rows must differ")));
        }
        if !(1..=n).contains(&p) || !(1..=n).contains(&q) {
            return Err(Error::argument(format!(
                "minor({p},{q}): rows must lie in 1..={n}"
            )));
        }
        Ok(&self.minors[pair_index(n, p.min(q), p.max(q))])
    }

    /// All minors in lexicographic pair order (1,2), (1,3), ...
    pub fn minors_lex(&self) -> &[BigInt] {
        &self.minors
    }

    /// The reduction condition report computed at construction.
    pub fn check_condition(&self) -> &ConditionReport {
        &self.report
    }

    pub fn is_valid(&self) -> bool {
        self.report.is_valid()
    }

    fn require_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::state(self.report.to_string()))
        }
    }

    /// The sign system eps^p_q. Requires a validated matrix: the signs
    /// are undefined where Delta_pq = 0.
    pub fn sign_epsilon(&self) -> Result<SignSystem> {
        self.require_valid()?;
        let n = self.n();
        let upper = pairs(n)
            .map(|(p, q)| {
                let d = &self.minors[pair_index(n, p, q)];
                // (-1)^(p+q) * sign(p - q) * sign(Delta_pq) with p < q.
                let parity = if (p + q) % 2 == 0 { 1i8 } else { -1i8 };
                let sgn_d = if d.is_negative() { -1i8 } else { 1i8 };
                parity * -sgn_d
            })
            .collect();
        Ok(SignSystem { n, upper })
    }

    /// The kernel vector w^p: zero in entry p, eps^p_q |Delta_pq| in entry
    /// q. Lies in the kernel of Omega^t.
    pub fn kernel_vector(&self, p: usize) -> Result<Vec<BigInt>> {
        self.require_valid()?;
        let n = self.n();
        if !(1..=n).contains(&p) {
            return Err(Error::argument(format!(
                "kernel_vector({p}): row must lie in 1..={n}"
            )));
        }
        let eps = self.sign_epsilon()?;
        let mut w = vec![BigInt::zero(); n];
        for q in 1..=n {
            if q == p {
                continue;
            }
            let a = self.minor(p, q)?.abs();
            w[q - 1] = if eps.eps(p, q) < 0 { -a } else { a };
        }
        Ok(w)
    }

    /// Whether Delta_{p1p3} Delta_{p2p4} +- Delta_{p2p3} Delta_{p1p4}
    /// +- Delta_{p1p2} Delta_{p3p4} = 0 for some choice of the two signs.
    /// An identity of minors; holds for arbitrary integer matrices.
    pub fn plucker_check(&self, p1: usize, p2: usize, p3: usize, p4: usize) -> Result<bool> {
        let n = self.n();
        let ps = [p1, p2, p3, p4];
        for (a, &x) in ps.iter().enumerate() {
            if !(1..=n).contains(&x) {
                return Err(Error::argument(format!(
                    "plucker_check: index {x} out of 1..={n}"
                )));
            }
            if ps[a + 1..].contains(&x) {
                return Err(Error::argument(format!(
                    "plucker_check: repeated index {x}"
                )));
            }
        }
        let t1 = self.minor(p1, p3)? * self.minor(p2, p4)?;
        let t2 = self.minor(p2, p3)? * self.minor(p1, p4)?;
        let t3 = self.minor(p1, p2)? * self.minor(p3, p4)?;
        for s1 in [1, -1] {
            for s2 in [1, -1] {
                if (&t1 + BigInt::from(s1) * &t2 + BigInt::from(s2) * &t3).is_zero() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// The adjacency graph on [k+2]. For k >= 2 this must be a single
    /// (k+2)-cycle; anything else is reported as an internal error since
    /// it would contradict the cycle lemma.
    pub fn adjacency_graph(&self) -> Result<AdjacencyGraph> {
        self.require_valid()?;
        let n = self.n();
        let eps = self.sign_epsilon()?;
        let mut edges = Vec::new();
        for (p, q) in pairs(n) {
            let mut values = (1..=n).filter(|&r| r != p && r != q).map(|r| {
                eps.eps(p, r) * eps.eps(q, r)
            });
            let first = values.next().expect("n >= 3 leaves at least one r");
            if values.all(|v| v == first) {
                edges.push((p, q));
            }
        }
        let degenerate = self.k == 1;
        if !degenerate && !is_single_cycle(n, &edges) {
            return Err(Error::internal(format!(
                "adjacency graph of a valid Omega is not a single {n}-cycle: {edges:?}"
            )));
        }
        Ok(AdjacencyGraph { edges, degenerate })
    }

    /// Parses either the plain text format or the JSON object form.
    pub fn parse(input: &str) -> Result<OmegaMatrix> {
        if input.trim_start().starts_with('{') {
            Self::parse_json(input)
        } else {
            Self::parse_text(input)
        }
    }

    /// Text format: a "<rows> <cols>" header, then rows * cols decimal
    /// integers separated by whitespace. '#' starts a comment to end of line.
    pub fn parse_text(input: &str) -> Result<OmegaMatrix> {
        let mut tokens = Vec::new();
        for line in input.lines() {
            let line = line.split('#').next().unwrap_or("");
            tokens.extend(line.split_whitespace());
        }
        if tokens.len() < 2 {
            return Err(Error::parse("missing '<rows> <cols>' header".to_string()));
        }
        let rows: usize = tokens[0]
            .parse()
            .map_err(|_| Error::parse(format!("bad row count {:?}", tokens[0])))?;
        let cols: usize = tokens[1]
            .parse()
            .map_err(|_| Error::parse(format!("bad column count {:?}", tokens[1])))?;
        let body = &tokens[2..];
        if body.len() != rows * cols {
            return Err(Error::parse(format!(
                "expected {} entries for a {rows} x {cols} matrix, found {}",
                rows * cols,
                body.len()
            )));
        }
        let mut data = Vec::with_capacity(rows);
        for r in 0..rows {
            let mut row = Vec::with_capacity(cols);
            for c in 0..cols {
                let tok = body[r * cols + c];
                let v: BigInt = tok
                    .parse()
                    .map_err(|_| Error::parse(format!("bad integer {tok:?}")))?;
                row.push(v);
            }
            data.push(row);
        }
        OmegaMatrix::new(data).map_err(|e| Error::parse(e.to_string()))
    }

    /// JSON form: {"k": K, "rows": [[...], ...]} with entries given as
    /// numbers or decimal strings.
    pub fn parse_json(input: &str) -> Result<OmegaMatrix> {
        let value: serde_json::Value =
            serde_json::from_str(input).map_err(|e| Error::parse(e.to_string()))?;
        let k = value
            .get("k")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::parse("missing integer field \"k\"".to_string()))?
            as usize;
        let rows_val = value
            .get("rows")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::parse("missing array field \"rows\"".to_string()))?;
        let mut data = Vec::with_capacity(rows_val.len());
        for row in rows_val {
            let row = row
                .as_array()
                .ok_or_else(|| Error::parse("rows must be arrays".to_string()))?;
            let mut out = Vec::with_capacity(row.len());
            for e in row {
                let v = match e {
                    serde_json::Value::Number(x) => x
                        .as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| Error::parse(format!("non-integer entry {x}")))?,
                    serde_json::Value::String(s) => s
                        .parse()
                        .map_err(|_| Error::parse(format!("bad integer {s:?}")))?,
                    other => return Err(Error::parse(format!("bad entry {other}"))),
                };
                out.push(v);
            }
            data.push(out);
        }
        if data.len() != k + 2 || data.iter().any(|r| r.len() != k) {
            return Err(Error::parse(format!(
                "\"rows\" must be a (k+2) x k array with k = {k}"
            )));
        }
        OmegaMatrix::new(data).map_err(|e| Error::parse(e.to_string()))
    }

    /// Emits the plain text format accepted by `parse_text`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.k);
        out.push_str(&self.entries.to_string());
        out
    }
}

/// Determinant of `m` with 1-based rows p and q removed.
fn deleted_rows_det(m: &IntMatrix, p: usize, q: usize) -> Result<BigInt> {
    let k = m.cols();
    let mut sub = IntMatrix::zeros(k, k);
    let mut dst = 0;
    for r in 0..m.rows() {
        if r + 1 == p || r + 1 == q {
            continue;
        }
        for c in 0..k {
            sub[(dst, c)] = m[(r, c)].clone();
        }
        dst += 1;
    }
    sub.det_exact()
}

fn condition_report(n: usize, minors: &[BigInt]) -> ConditionReport {
    let mut failing_pairs = Vec::new();
    for (p, q) in pairs(n) {
        if minors[pair_index(n, p, q)].is_zero() {
            failing_pairs.push((p, q));
        }
    }
    let mut failing_rows = Vec::new();
    for p in 1..=n {
        let mut g = BigInt::zero();
        for q in 1..=n {
            if q == p {
                continue;
            }
            g = g.gcd(&minors[pair_index(n, p.min(q), p.max(q))]);
        }
        if g != BigInt::from(1) {
            failing_rows.push((p, g));
        }
    }
    ConditionReport {
        nonzero_ok: failing_pairs.is_empty(),
        gcd_ok: failing_rows.is_empty(),
        failing_pairs,
        failing_rows,
    }
}

fn is_single_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    if edges.len() != n {
        return false;
    }
    let mut degree = vec![0usize; n + 1];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for &(p, q) in edges {
        degree[p] += 1;
        degree[q] += 1;
        adj[p].push(q);
        adj[q].push(p);
    }
    if (1..=n).any(|v| degree[v] != 2) {
        return false;
    }
    // Connectivity: walk from vertex 1.
    let mut seen = vec![false; n + 1];
    let mut stack = vec![1usize];
    seen[1] = true;
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn worked_k2() -> OmegaMatrix {
        OmegaMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[1, 2], &[3, 1]]).unwrap()
    }

    fn column(a: i64, b: i64, c: i64) -> OmegaMatrix {
        OmegaMatrix::from_i64_rows(&[&[a], &[b], &[c]]).unwrap()
    }

    #[test]
    fn minors_of_a_column() {
        let om = column(5, 7, 9);
        assert_eq!(om.minor(1, 2).unwrap(), &BigInt::from(9));
        assert_eq!(om.minor(1, 3).unwrap(), &BigInt::from(7));
        assert_eq!(om.minor(2, 3).unwrap(), &BigInt::from(5));
        assert_eq!(om.minor(3, 2).unwrap(), &BigInt::from(5));
    }

    #[test]
    fn minors_of_worked_k2() {
        let om = worked_k2();
        let lex: Vec<i64> = om
            .minors_lex()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(lex, vec![-5, -3, -1, 1, 2, 1]);
    }

    #[test]
    fn minor_symmetry_and_errors() {
        let om = worked_k2();
        for (p, q) in pairs(4) {
            assert_eq!(om.minor(p, q).unwrap(), om.minor(q, p).unwrap());
        }
        assert!(om.minor(1, 1).is_err());
        assert!(om.minor(0, 2).is_err());
        assert!(om.minor(1, 5).is_err());
    }

    #[test]
    fn condition_all_ones_column() {
        let om = column(1, 1, 1);
        assert!(om.check_condition().is_valid());
    }

    #[test]
    fn condition_zero_minor() {
        let om = column(0, 1, 1);
        let rep = om.check_condition();
        assert!(!rep.is_valid());
        assert!(!rep.nonzero_ok);
        assert!(rep.gcd_ok);
        assert_eq!(rep.failing_pairs, vec![(2, 3)]);
    }

    #[test]
    fn condition_gcd_failure() {
        let om = column(2, 2, 1);
        let rep = om.check_condition();
        assert!(!rep.is_valid());
        assert!(rep.nonzero_ok);
        assert!(!rep.gcd_ok);
        assert_eq!(rep.failing_rows, vec![(3, BigInt::from(2))]);
    }

    #[test]
    fn bad_shapes_rejected() {
        assert!(OmegaMatrix::from_i64_rows(&[&[1], &[1]]).is_err());
        assert!(OmegaMatrix::from_i64_rows(&[&[1, 2], &[3, 4], &[5, 6]]).is_err());
        assert!(OmegaMatrix::new(vec![vec![BigInt::from(1)], vec![], vec![]]).is_err());
    }

    #[test]
    fn eps_all_ones_column() {
        let om = column(1, 1, 1);
        let eps = om.sign_epsilon().unwrap();
        assert_eq!(eps.eps(1, 2), 1);
        assert_eq!(eps.eps(2, 3), 1);
        assert_eq!(eps.eps(3, 1), 1);
        assert_eq!(eps.eps(1, 3), -1);
    }

    #[test]
    fn eps_worked_k2() {
        let om = worked_k2();
        let eps = om.sign_epsilon().unwrap();
        assert_eq!(eps.eps(1, 2), -1);
        assert_eq!(eps.eps(1, 3), 1);
        assert_eq!(eps.eps(2, 3), 1);
        assert_eq!(eps.eps(3, 4), 1);
        for (p, q) in pairs(4) {
            assert_eq!(eps.eps(p, q), -eps.eps(q, p));
        }
    }

    #[test]
    fn eps_requires_valid() {
        let om = column(0, 1, 1);
        assert!(matches!(om.sign_epsilon(), Err(Error::State(_))));
    }

    #[test]
    fn kernel_vector_worked_k2() {
        let om = worked_k2();
        let w = om.kernel_vector(1).unwrap();
        let w: Vec<i64> = w.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(w, vec![0, -5, 3, -1]);
    }

    #[test]
    fn kernel_vectors_annihilate_columns() {
        let om = worked_k2();
        for p in 1..=4 {
            let w = om.kernel_vector(p).unwrap();
            for i in 1..=om.k() {
                let dot: BigInt = (1..=4).map(|q| &w[q - 1] * om.entry(q, i)).sum();
                assert!(dot.is_zero(), "w^{p} . column {i}");
            }
        }
    }

    #[test]
    fn kernel_vector_bad_index() {
        let om = worked_k2();
        assert!(om.kernel_vector(0).is_err());
        assert!(om.kernel_vector(5).is_err());
    }

    #[test]
    fn plucker_worked_k2() {
        let om = worked_k2();
        assert!(om.plucker_check(1, 2, 3, 4).unwrap());
        assert!(om.plucker_check(0, 2, 3, 4).is_err());
        assert!(om.plucker_check(1, 2, 2, 4).is_err());
    }

    #[test]
    fn plucker_with_zero_row_is_trivially_true() {
        // A zero row forces a zero factor into all three products.
        let om =
            OmegaMatrix::from_i64_rows(&[&[0, 0], &[1, 7], &[2, 5], &[3, 1]]).unwrap();
        assert!(om.plucker_check(1, 2, 3, 4).unwrap());
    }

    #[test]
    fn adjacency_worked_k2_is_four_cycle() {
        let om = worked_k2();
        let g = om.adjacency_graph().unwrap();
        assert!(!g.degenerate);
        assert_eq!(g.edges, vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
        assert_eq!(g.cycle_vertices(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn adjacency_k1_is_degenerate_triangle() {
        let om = column(1, 2, 3);
        let g = om.adjacency_graph().unwrap();
        assert!(g.degenerate);
        assert_eq!(g.edges, vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn parse_text_roundtrip() {
        let text = "# worked example\n4 2\n1 0\n0 1\n1 2\n3 1\n";
        let om = OmegaMatrix::parse(text).unwrap();
        assert_eq!(om.k(), 2);
        assert_eq!(om.minor(1, 2).unwrap(), &BigInt::from(-5));
        let again = OmegaMatrix::parse(&om.to_text()).unwrap();
        assert_eq!(again.entries(), om.entries());
    }

    #[test]
    fn parse_json_forms() {
        let om = OmegaMatrix::parse(r#"{"k": 1, "rows": [[1], [1], [1]]}"#).unwrap();
        assert_eq!(om.k(), 1);
        let om2 =
            OmegaMatrix::parse(r#"{"k": 1, "rows": [["10000000000000000000"], [1], [3]]}"#)
                .unwrap();
        assert_eq!(
            om2.entry(1, 1),
            &"10000000000000000000".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(OmegaMatrix::parse(""), Err(Error::Parse(_))));
        assert!(matches!(
            OmegaMatrix::parse("3 1\n1\n1"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            OmegaMatrix::parse("{\"k\": 1}"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            OmegaMatrix::parse("3 1\n1\nx\n1"),
            Err(Error::Parse(_))
        ));
    }
}
