//! The assembled answer for a validated Omega: both presentations of the
//! degree-4 torsion group G_Omega, the four-way order cross-check, cup
//! products and the first Pontrjagin class in normal form, and the full
//! cohomology report.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::classes::{v_class, rho_x};
use crate::error::{Error, Result};
use crate::idx::{pair_index, pairs, sym_pair_index, sym_pairs, triples};
use crate::linalg::{cokernel, solve_left, row_vec_mul, AbelianGroup, GroupElement, IntMatrix};
use crate::omega::OmegaMatrix;
use crate::poly::IntPolynomial;
use crate::trees::{
    gcd_over_tree_products, identity_ordering, laplacian_minor, tree_order_sum, EdgeWeights,
};

fn require_valid(om: &OmegaMatrix) -> Result<()> {
    if om.is_valid() {
        Ok(())
    } else {
        Err(Error::state(om.check_condition().to_string()))
    }
}

/// The weight system |Delta_pq| on the complete graph on [k+2].
pub fn minor_weights(om: &OmegaMatrix) -> EdgeWeights {
    EdgeWeights::new(om.n(), |p, q| {
        om.minor(p, q).expect("pair in range").abs()
    })
    .expect("n >= 3")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    /// Generators x_i x_j (i <= j), one relation row per 3-subset of
    /// [k+2]: the coefficients of rho_x(p, q, r).
    RhoX,
    /// Generators V_pq (p < q), relation rows R_p = sum |Delta_pq| V_pq
    /// plus one triangle row V_pq + V_qr + V_rp per 3-subset.
    VR,
}

/// A finite presentation of G_Omega: labeled generators and an integer
/// relations matrix (rows are relations).
#[derive(Clone, Debug)]
pub struct GOmegaPresentation {
    pub kind: PresentationKind,
    pub generators: Vec<String>,
    pub relations: IntMatrix,
}

/// Coefficient vector of a homogeneous quadratic in Z[x1..xk] on the
/// monomial basis x_i x_j, (i, j) lexicographic with i <= j.
fn quadratic_coeffs(f: &IntPolynomial, k: usize) -> Result<Vec<BigInt>> {
    let mut out = vec![BigInt::zero(); k * (k + 1) / 2];
    for (exps, coeff) in f.terms() {
        let support: Vec<(usize, u32)> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i + 1, e))
            .collect();
        let pos = match support.as_slice() {
            [(i, 2)] => sym_pair_index(k, *i, *i),
            [(i, 1), (j, 1)] => sym_pair_index(k, *i, *j),
            _ => {
                return Err(Error::argument(format!(
                    "polynomial is not homogeneous quadratic: term {exps:?}"
                )))
            }
        };
        out[pos] = coeff.clone();
    }
    Ok(out)
}

/// The cup-product presentation of G_Omega.
pub fn presentation_rho(om: &OmegaMatrix) -> Result<GOmegaPresentation> {
    require_valid(om)?;
    let (k, n) = (om.k(), om.n());
    let generators = sym_pairs(k)
        .map(|(i, j)| {
            if i == j {
                format!("x{i}^2")
            } else {
                format!("x{i}*x{j}")
            }
        })
        .collect();
    let mut rows = Vec::with_capacity(n * (n - 1) * (n - 2) / 6);
    for (p, q, r) in triples(n) {
        rows.push(quadratic_coeffs(&rho_x(om, p, q, r)?, k)?);
    }
    Ok(GOmegaPresentation {
        kind: PresentationKind::RhoX,
        generators,
        relations: IntMatrix::from_rows(rows)?,
    })
}

fn vpq_label(n: usize, p: usize, q: usize) -> String {
    if n <= 9 {
        format!("V{p}{q}")
    } else {
        format!("V{p}_{q}")
    }
}

/// The V/R presentation of G_Omega, with the antisymmetry V_qp = -V_pq
/// already folded into the p < q generator set.
pub fn presentation_vr(om: &OmegaMatrix) -> Result<GOmegaPresentation> {
    require_valid(om)?;
    let n = om.n();
    let cols = n * (n - 1) / 2;
    let generators = pairs(n).map(|(p, q)| vpq_label(n, p, q)).collect();
    let mut rows = Vec::with_capacity(n + n * (n - 1) * (n - 2) / 6);
    for p in 1..=n {
        let mut row = vec![BigInt::zero(); cols];
        for q in 1..=n {
            if q == p {
                continue;
            }
            let w = om.minor(p, q)?.abs();
            if p < q {
                row[pair_index(n, p, q)] += w;
            } else {
                row[pair_index(n, q, p)] -= w;
            }
        }
        rows.push(row);
    }
    for (p, q, r) in triples(n) {
        let mut row = vec![BigInt::zero(); cols];
        row[pair_index(n, p, q)] += 1;
        row[pair_index(n, q, r)] += 1;
        row[pair_index(n, p, r)] -= 1;
        rows.push(row);
    }
    Ok(GOmegaPresentation {
        kind: PresentationKind::VR,
        generators,
        relations: IntMatrix::from_rows(rows)?,
    })
}

/// The torsion group G_Omega from the cup-product presentation. A
/// nonzero free rank would contradict the finiteness theorem and is
/// reported as an internal error.
pub fn torsion_group(om: &OmegaMatrix) -> Result<AbelianGroup> {
    let presentation = presentation_rho(om)?;
    let g = cokernel(&presentation.relations);
    if g.free_rank() != 0 {
        return Err(Error::internal(format!(
            "G_Omega came out with free rank {}; it must be a torsion group",
            g.free_rank()
        )));
    }
    Ok(g)
}

/// The square relations matrix from the V/R route: in the V_{a_i a_j}
/// basis (pairs of positions, lexicographic), rows are the modified
/// relations R'_{a_p} followed by the triangle rows based at a_1. The
/// assembly is checked against the expected block shape
/// [[-M, 0], [?, I]] with M the weighted Laplacian minor, and |det| is
/// returned; it equals |G_Omega|.
pub fn relations_matrix_det(om: &OmegaMatrix, ordering: Option<&[usize]>) -> Result<BigInt> {
    require_valid(om)?;
    let n = om.n();
    let identity_order;
    let order: &[usize] = match ordering {
        Some(o) => o,
        None => {
            identity_order = identity_ordering(n);
            &identity_order
        }
    };
    {
        let mut seen = vec![false; n + 1];
        if order.len() != n || order.iter().any(|&a| a < 1 || a > n || std::mem::replace(&mut seen[a], true)) {
            return Err(Error::argument(format!(
                "ordering must be a permutation of 1..={n}"
            )));
        }
    }
    let cols = n * (n - 1) / 2;
    let weight = |x: usize, y: usize| om.minor(order[x - 1], order[y - 1]).expect("in range").abs();

    // V_{a_x a_y} as a coefficient on the position-pair basis.
    let add_v = |row: &mut [BigInt], x: usize, y: usize, c: &BigInt| {
        if x < y {
            row[pair_index(n, x, y)] += c;
        } else {
            row[pair_index(n, y, x)] -= c;
        }
    };

    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(cols);
    // R'_{a_p} = R_{a_p} - sum_{q != 1, p} |Delta_{a_p a_q}| (V_{a_1 a_p} + V_{a_p a_q} + V_{a_q a_1}).
    for p in 2..=n {
        let mut row = vec![BigInt::zero(); cols];
        for q in 1..=n {
            if q == p {
                continue;
            }
            add_v(&mut row, p, q, &weight(p, q));
        }
        for q in 2..=n {
            if q == p {
                continue;
            }
            let c = -weight(p, q);
            add_v(&mut row, 1, p, &c);
            add_v(&mut row, p, q, &c);
            add_v(&mut row, q, 1, &c);
        }
        rows.push(row);
    }
    // Triangle rows V_{a_1 a_i} + V_{a_i a_j} + V_{a_j a_1}, 2 <= i < j.
    for i in 2..=n {
        for j in i + 1..=n {
            let mut row = vec![BigInt::zero(); cols];
            let one = BigInt::one();
            add_v(&mut row, 1, i, &one);
            add_v(&mut row, i, j, &one);
            add_v(&mut row, j, 1, &one);
            rows.push(row);
        }
    }
    let matrix = IntMatrix::from_rows(rows)?;

    // Block-shape check. The first n-1 columns are the pairs (1, j).
    let head = n - 1;
    let w = EdgeWeights::new(n, weight).expect("n >= 3");
    let m = laplacian_minor(&w, &identity_ordering(n))?;
    for r in 0..head {
        for c in 0..cols {
            if c < head {
                if matrix[(r, c)] != -m[(r, c)].clone() {
                    return Err(Error::internal(
                        "relations matrix upper-left block is not -M".to_string(),
                    ));
                }
            } else if !matrix[(r, c)].is_zero() {
                return Err(Error::internal(
                    "relations matrix upper-right block is not zero".to_string(),
                ));
            }
        }
    }
    for r in head..cols {
        for c in head..cols {
            let expected = if r == c { BigInt::one() } else { BigInt::zero() };
            if matrix[(r, c)] != expected {
                return Err(Error::internal(
                    "relations matrix lower-right block is not the identity".to_string(),
                ));
            }
        }
    }

    Ok(matrix.det_exact()?.abs())
}

/// The four order computations and whether every value present agrees.
#[derive(Clone, Debug)]
pub struct OrderLedger {
    /// None when k + 2 exceeds the tree enumeration budget.
    pub tree_sum: Option<BigInt>,
    pub det_m: BigInt,
    pub snf_product: BigInt,
    pub relations_det: BigInt,
    pub agree: bool,
}

impl OrderLedger {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "tree_sum": self.tree_sum.as_ref().map(|v| v.to_string()),
            "det_m": self.det_m.to_string(),
            "snf_product": self.snf_product.to_string(),
            "relations_det": self.relations_det.to_string(),
            "agree": self.agree,
        })
    }
}

/// |G_Omega| by all four routes: tree sum (within budget), |det M|,
/// the product of invariant factors, and the square relations matrix.
pub fn order_cross_check(om: &OmegaMatrix, tree_budget: usize) -> Result<OrderLedger> {
    let group = torsion_group(om)?;
    order_cross_check_with(om, &group, tree_budget)
}

fn order_cross_check_with(
    om: &OmegaMatrix,
    group: &AbelianGroup,
    tree_budget: usize,
) -> Result<OrderLedger> {
    require_valid(om)?;
    let w = minor_weights(om);
    let tree_sum = if om.n() <= tree_budget {
        Some(tree_order_sum(&w))
    } else {
        None
    };
    let det_m = laplacian_minor(&w, &identity_ordering(om.n()))?
        .det_exact()?
        .abs();
    let snf_product = group
        .order()
        .ok_or_else(|| Error::internal("torsion group has infinite order".to_string()))?;
    let relations_det = relations_matrix_det(om, None)?;
    let mut agree = det_m == snf_product && snf_product == relations_det;
    if let Some(ts) = &tree_sum {
        agree = agree && ts == &det_m;
    }
    Ok(OrderLedger {
        tree_sum,
        det_m,
        snf_product,
        relations_det,
        agree,
    })
}

/// Image of the monomial x_i x_j in G_Omega's normal form.
pub fn cup_product(om: &OmegaMatrix, i: usize, j: usize) -> Result<GroupElement> {
    let group = torsion_group(om)?;
    cup_product_in(&group, om.k(), i, j)
}

fn cup_product_in(group: &AbelianGroup, k: usize, i: usize, j: usize) -> Result<GroupElement> {
    if i < 1 || j < 1 || i > k || j > k {
        return Err(Error::argument(format!(
            "cup product indices ({i},{j}) out of 1..={k}"
        )));
    }
    let (a, b) = (i.min(j), i.max(j));
    let mut coords = vec![BigInt::zero(); k * (k + 1) / 2];
    coords[sym_pair_index(k, a, b)] = BigInt::one();
    group.reduce_element(&coords)
}

/// For each p, sum_{q != p} |Delta_pq| eps^p_q v_p v_q must vanish
/// identically in Z[x1..xk], not merely in G_Omega.
pub fn vp_square_relation_check(om: &OmegaMatrix) -> Result<bool> {
    require_valid(om)?;
    let eps = om.sign_epsilon()?;
    let n = om.n();
    for p in 1..=n {
        let vp = v_class(om, p)?;
        let mut acc = vp.ring().zero();
        for q in 1..=n {
            if q == p {
                continue;
            }
            let c = om.minor(p, q)?.abs() * BigInt::from(eps.eps(p, q));
            acc = acc.add(&vp.mul(&v_class(om, q)?)?.scale(&c))?;
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first Pontrjagin class 2 sum_p v_p^2 in Z[x1..xk].
pub fn pontryagin_polynomial(om: &OmegaMatrix) -> Result<IntPolynomial> {
    require_valid(om)?;
    let mut acc = v_class(om, 1)?.pow(2);
    for p in 2..=om.n() {
        acc = acc.add(&v_class(om, p)?.pow(2))?;
    }
    Ok(acc.scale(&BigInt::from(2)))
}

/// The Pontrjagin polynomial and its image in G_Omega's normal form.
pub fn pontryagin_class(om: &OmegaMatrix) -> Result<(IntPolynomial, GroupElement)> {
    let group = torsion_group(om)?;
    let poly = pontryagin_polynomial(om)?;
    let element = group.reduce_element(&quadratic_coeffs(&poly, om.k())?)?;
    Ok((poly, element))
}

/// Rows: the quadratic coefficient vectors of eps^p_q v_p v_q over pairs
/// p < q. These integrally span the degree-4 lattice for a valid Omega.
fn vr_basis_matrix(om: &OmegaMatrix) -> Result<IntMatrix> {
    let eps = om.sign_epsilon()?;
    let k = om.k();
    let mut rows = Vec::new();
    for (p, q) in pairs(om.n()) {
        let vpq = v_class(om, p)?
            .mul(&v_class(om, q)?)?
            .scale(&BigInt::from(eps.eps(p, q)));
        rows.push(quadratic_coeffs(&vpq, k)?);
    }
    IntMatrix::from_rows(rows)
}

/// The Pontrjagin image computed through the V/R route: lift the
/// polynomial to integer V_pq coordinates, reduce in the V/R cokernel,
/// take the normal form's representative back, and map it into the
/// cup-product presentation. Must agree with `pontryagin_class`.
pub fn pontryagin_via_vr(om: &OmegaMatrix) -> Result<GroupElement> {
    let group = torsion_group(om)?;
    pontryagin_via_vr_with(om, &group)
}

fn pontryagin_via_vr_with(om: &OmegaMatrix, rho_group: &AbelianGroup) -> Result<GroupElement> {
    let basis = vr_basis_matrix(om)?;
    let target = quadratic_coeffs(&pontryagin_polynomial(om)?, om.k())?;
    let lift = solve_left(&basis, &target).ok_or_else(|| {
        Error::internal(
            "p1 has no integer expression in the V_pq classes; they must span".to_string(),
        )
    })?;
    let vr_group = cokernel(&presentation_vr(om)?.relations);
    let element = vr_group.reduce_element(&lift)?;
    let representative = vr_group.representative(&element)?;
    let mapped = row_vec_mul(&representative, &basis);
    rho_group.reduce_element(&mapped)
}

/// gcd over all trees of the products of |Delta_pq| along tree edges.
/// Must be 1 for a valid Omega; anything else is an internal error.
pub fn gcd_over_trees(om: &OmegaMatrix, tree_budget: usize) -> Result<BigInt> {
    require_valid(om)?;
    if om.n() > tree_budget {
        return Err(Error::resource(format!(
            "gcd over trees needs enumeration; n = {} exceeds budget {tree_budget}",
            om.n()
        )));
    }
    let g = gcd_over_tree_products(&minor_weights(om));
    if !g.is_one() {
        return Err(Error::internal(format!(
            "gcd over tree products is {g}, but the gcd lemma demands 1"
        )));
    }
    Ok(g)
}

/// The k = 1 closed form r = |D12||D13| + |D21||D23| + |D31||D32|.
pub fn k1_closed_form(om: &OmegaMatrix) -> Result<BigInt> {
    if om.k() != 1 {
        return Err(Error::argument("closed form applies only to k = 1".to_string()));
    }
    let d12 = om.minor(1, 2)?.abs();
    let d13 = om.minor(1, 3)?.abs();
    let d23 = om.minor(2, 3)?.abs();
    Ok(&d12 * &d13 + &d12 * &d23 + &d13 * &d23)
}

/// The Betti table (free ranks) of S7_Omega in degrees 0..=7.
pub fn betti_table(k: usize) -> [usize; 8] {
    [1, 0, k, 0, 0, k, 0, 1]
}

/// Everything the library can say about one Omega, with every internal
/// cross-check recorded. `valid` is false whenever any check failed;
/// the diagnostics say which.
#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub k: usize,
    pub valid: bool,
    pub betti: [usize; 8],
    pub torsion: AbelianGroup,
    pub order_ledger: OrderLedger,
    pub cup_table: Vec<(usize, usize, GroupElement)>,
    pub p1_polynomial: IntPolynomial,
    pub p1_element: GroupElement,
    pub k1_r: Option<BigInt>,
    pub bound_ok: bool,
    pub diagnostics: Vec<String>,
}

/// Assembles the full report. An Omega failing the reduction condition
/// is a state error; cross-check disagreements mark the report invalid
/// instead of being silently dropped.
pub fn cohomology_report(om: &OmegaMatrix, tree_budget: usize) -> Result<CohomologyReport> {
    require_valid(om)?;
    let (k, n) = (om.k(), om.n());
    let mut diagnostics = Vec::new();

    let group = torsion_group(om)?;
    let ledger = order_cross_check_with(om, &group, tree_budget)?;
    if !ledger.agree {
        diagnostics.push(format!(
            "order ledger disagrees: tree_sum={:?} det_m={} snf_product={} relations_det={}",
            ledger.tree_sum, ledger.det_m, ledger.snf_product, ledger.relations_det
        ));
    }

    let mut cup_table = Vec::new();
    for (i, j) in sym_pairs(k) {
        cup_table.push((i, j, cup_product_in(&group, k, i, j)?));
    }

    // Every rho relation must reduce to the identity under the cup map.
    for (p, q, r) in triples(n) {
        let coords = quadratic_coeffs(&rho_x(om, p, q, r)?, k)?;
        if !group.reduce_element(&coords)?.is_identity() {
            diagnostics.push(format!(
                "relation rho({p},{q},{r}) does not map to the identity"
            ));
        }
    }

    if !vp_square_relation_check(om)? {
        diagnostics.push("sum |Delta_pq| eps^p_q v_p v_q did not vanish".to_string());
    }

    let p1_polynomial = pontryagin_polynomial(om)?;
    let p1_element = group.reduce_element(&quadratic_coeffs(&p1_polynomial, k)?)?;
    match pontryagin_via_vr_with(om, &group) {
        Ok(via_vr) => {
            if via_vr != p1_element {
                diagnostics.push("p1 differs between the two presentations".to_string());
            }
        }
        Err(e) => diagnostics.push(format!("p1 V/R route failed: {e}")),
    }

    let vr_group = cokernel(&presentation_vr(om)?.relations);
    if vr_group.invariant_factors() != group.invariant_factors()
        || vr_group.free_rank() != group.free_rank()
    {
        diagnostics.push(format!(
            "presentations disagree: cup-product form gives {group}, V/R form gives {vr_group}"
        ));
    }

    if om.n() <= tree_budget {
        if let Err(e) = gcd_over_trees(om, tree_budget) {
            diagnostics.push(e.to_string());
        }
    }

    let order = group
        .order()
        .ok_or_else(|| Error::internal("torsion group has infinite order".to_string()))?;
    let bound = BigInt::from(n).pow(k as u32);
    let bound_ok = order >= bound;
    if !bound_ok {
        diagnostics.push(format!(
            "|G_Omega| = {order} is below the tree-count bound {bound}"
        ));
    }

    let k1_r = if k == 1 {
        let r = k1_closed_form(om)?;
        if r != order {
            diagnostics.push(format!("k = 1 closed form r = {r} but |G_Omega| = {order}"));
        }
        Some(r)
    } else {
        None
    };

    Ok(CohomologyReport {
        k,
        valid: diagnostics.is_empty(),
        betti: betti_table(k),
        torsion: group,
        order_ledger: ledger,
        cup_table,
        p1_polynomial,
        p1_element,
        k1_r,
        bound_ok,
        diagnostics,
    })
}

fn element_json(e: &GroupElement) -> serde_json::Value {
    serde_json::Value::Array(
        e.residues
            .iter()
            .map(|r| serde_json::Value::String(r.to_string()))
            .collect(),
    )
}

impl CohomologyReport {
    pub fn order(&self) -> BigInt {
        self.order_ledger.snf_product.clone()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::json!({
            "k": self.k,
            "valid": self.valid,
            "betti": self.betti.to_vec(),
            "torsion": {
                "invariant_factors": self.torsion.invariant_factors().iter()
                    .map(|d| d.to_string()).collect::<Vec<_>>(),
                "order": self.order().to_string(),
            },
            "order_ledger": self.order_ledger.to_json(),
            "cup_table": self.cup_table.iter().map(|(i, j, e)| serde_json::json!({
                "i": i, "j": j, "element": element_json(e),
            })).collect::<Vec<_>>(),
            "p1": {
                "polynomial": self.p1_polynomial.to_string(),
                "element": element_json(&self.p1_element),
            },
            "bound_ok": self.bound_ok,
        });
        if let Some(r) = &self.k1_r {
            obj["k1_r"] = serde_json::Value::String(r.to_string());
        }
        if !self.diagnostics.is_empty() {
            obj["diagnostics"] = serde_json::json!(self.diagnostics);
        }
        obj
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::DEFAULT_TREE_BUDGET;

    fn worked_k2() -> OmegaMatrix {
        OmegaMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[1, 2], &[3, 1]]).unwrap()
    }

    fn ones_column() -> OmegaMatrix {
        OmegaMatrix::from_i64_rows(&[&[1], &[1], &[1]]).unwrap()
    }

    #[test]
    fn rho_presentation_ones_column() {
        let om = ones_column();
        let pres = presentation_rho(&om).unwrap();
        assert_eq!(pres.generators, vec!["x1^2"]);
        assert_eq!((pres.relations.rows(), pres.relations.cols()), (1, 1));
        assert_eq!(pres.relations[(0, 0)], BigInt::from(3));
        let g = torsion_group(&om).unwrap();
        assert_eq!(g.invariant_factors(), &[BigInt::from(3)]);
    }

    #[test]
    fn rho_presentation_worked_counts() {
        let om = worked_k2();
        let pres = presentation_rho(&om).unwrap();
        assert_eq!(pres.generators, vec!["x1^2", "x1*x2", "x2^2"]);
        assert_eq!((pres.relations.rows(), pres.relations.cols()), (4, 3));
        // First relation row, from expanding
        // -v1*v2 + v2*v3 - v3*v1 = -x1^2 - 2*x1*x2 + 2*x2^2 by hand.
        let first: Vec<i64> = (0..3)
            .map(|c| i64::try_from(&pres.relations[(0, c)]).unwrap())
            .collect();
        assert_eq!(first, vec![-1, -2, 2]);
        // Full column rank: the group is finite.
        assert_eq!(pres.relations.rank(), 3);
    }

    #[test]
    fn torsion_group_worked_is_124() {
        let g = torsion_group(&worked_k2()).unwrap();
        assert_eq!(g.free_rank(), 0);
        assert_eq!(g.order(), Some(BigInt::from(124)));
    }

    #[test]
    fn vr_presentation_shapes_and_row_sum() {
        let om = worked_k2();
        let pres = presentation_vr(&om).unwrap();
        assert_eq!(pres.generators.len(), 6);
        assert_eq!(pres.relations.rows(), 4 + 4);
        // sum_p R_p = 0 after antisymmetry folding.
        for c in 0..6 {
            let total: BigInt = (0..4).map(|r| pres.relations[(r, c)].clone()).sum();
            assert!(total.is_zero(), "column {c}");
        }
        let g = cokernel(&pres.relations);
        assert_eq!(g.order(), Some(BigInt::from(124)));
    }

    #[test]
    fn vr_presentation_k1() {
        let om = ones_column();
        let pres = presentation_vr(&om).unwrap();
        assert_eq!(pres.generators, vec!["V12", "V13", "V23"]);
        assert_eq!(pres.relations.rows(), 4);
        let g = cokernel(&pres.relations);
        assert_eq!(g.order(), Some(BigInt::from(3)));
    }

    #[test]
    fn relations_det_examples() {
        assert_eq!(
            relations_matrix_det(&ones_column(), None).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            relations_matrix_det(&worked_k2(), None).unwrap(),
            BigInt::from(124)
        );
    }

    #[test]
    fn relations_det_ordering_invariance() {
        let om = worked_k2();
        let base = relations_matrix_det(&om, None).unwrap();
        for ordering in crate::testutil::permutations(&[1, 2, 3, 4]) {
            assert_eq!(
                relations_matrix_det(&om, Some(&ordering)).unwrap(),
                base,
                "ordering {ordering:?}"
            );
        }
        assert!(relations_matrix_det(&om, Some(&[1, 2, 3])).is_err());
        assert!(relations_matrix_det(&om, Some(&[1, 2, 3, 3])).is_err());
    }

    #[test]
    fn order_cross_check_agrees() {
        for om in [ones_column(), worked_k2()] {
            let ledger = order_cross_check(&om, DEFAULT_TREE_BUDGET).unwrap();
            assert!(ledger.agree);
            assert_eq!(ledger.tree_sum.as_ref(), Some(&ledger.det_m));
        }
    }

    #[test]
    fn order_cross_check_beyond_budget_skips_tree_sum() {
        let om = ones_column();
        let ledger = order_cross_check(&om, 2).unwrap();
        assert!(ledger.tree_sum.is_none());
        assert!(ledger.agree);
    }

    #[test]
    fn cup_product_ones_column() {
        let om = ones_column();
        let e = cup_product(&om, 1, 1).unwrap();
        assert_eq!(e.residues, vec![BigInt::one()]);
        assert!(cup_product(&om, 1, 2).is_err());
    }

    #[test]
    fn cup_products_satisfy_relations() {
        let om = worked_k2();
        let group = torsion_group(&om).unwrap();
        for (p, q, r) in triples(4) {
            let coords = quadratic_coeffs(&rho_x(&om, p, q, r).unwrap(), 2).unwrap();
            assert!(group.reduce_element(&coords).unwrap().is_identity());
        }
    }

    #[test]
    fn cup_product_symmetric() {
        let om = worked_k2();
        assert_eq!(
            cup_product(&om, 1, 2).unwrap(),
            cup_product(&om, 2, 1).unwrap()
        );
    }

    #[test]
    fn vp_square_relations_vanish() {
        assert!(vp_square_relation_check(&ones_column()).unwrap());
        assert!(vp_square_relation_check(&worked_k2()).unwrap());
    }

    #[test]
    fn pontryagin_ones_column() {
        let om = ones_column();
        let (poly, element) = pontryagin_class(&om).unwrap();
        assert_eq!(poly.to_string(), "6*x1^2");
        assert!(element.is_identity());
    }

    #[test]
    fn pontryagin_even_coefficients() {
        let (poly, _) = pontryagin_class(&worked_k2()).unwrap();
        for (_, c) in poly.terms() {
            assert!((c % BigInt::from(2)).is_zero());
        }
        assert_eq!(poly.to_string(), "22*x1^2 + 20*x1*x2 + 12*x2^2");
    }

    #[test]
    fn pontryagin_routes_agree() {
        for om in [ones_column(), worked_k2()] {
            let (_, direct) = pontryagin_class(&om).unwrap();
            let via_vr = pontryagin_via_vr(&om).unwrap();
            assert_eq!(direct, via_vr);
        }
    }

    #[test]
    fn gcd_over_trees_is_one() {
        assert!(gcd_over_trees(&ones_column(), DEFAULT_TREE_BUDGET)
            .unwrap()
            .is_one());
        assert!(gcd_over_trees(&worked_k2(), DEFAULT_TREE_BUDGET)
            .unwrap()
            .is_one());
        assert!(matches!(
            gcd_over_trees(&worked_k2(), 3),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn report_ones_column() {
        let om = ones_column();
        let report = cohomology_report(&om, DEFAULT_TREE_BUDGET).unwrap();
        assert!(report.valid, "diagnostics: {:?}", report.diagnostics);
        assert_eq!(report.betti, [1, 0, 1, 0, 0, 1, 0, 1]);
        assert_eq!(report.order(), BigInt::from(3));
        assert_eq!(report.k1_r, Some(BigInt::from(3)));
        assert!(report.bound_ok);
        assert!(report.p1_element.is_identity());
    }

    #[test]
    fn report_worked_k2() {
        let om = worked_k2();
        let report = cohomology_report(&om, DEFAULT_TREE_BUDGET).unwrap();
        assert!(report.valid, "diagnostics: {:?}", report.diagnostics);
        assert_eq!(report.betti, [1, 0, 2, 0, 0, 2, 0, 1]);
        assert_eq!(report.order(), BigInt::from(124));
        assert_eq!(report.k1_r, None);
        assert!(report.bound_ok);
        let json = report.to_json();
        assert_eq!(json["torsion"]["order"], "124");
        assert_eq!(json["valid"], true);
        assert_eq!(json["betti"][2], 2);
    }

    #[test]
    fn report_rejects_invalid_omega() {
        let om = OmegaMatrix::from_i64_rows(&[&[0], &[1], &[1]]).unwrap();
        assert!(matches!(
            cohomology_report(&om, DEFAULT_TREE_BUDGET),
            Err(Error::State(_))
        ));
    }
}
