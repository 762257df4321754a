//! Polynomial classes attached to a validated Omega: the linear forms
//! v_p, the quadratic relations rho_pqr in both the u-ring and the
//! x-ring, orientation classes, and the explicit ideal-membership
//! certificates behind the degree-4 relations.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::idx::triples;
use crate::omega::{OmegaMatrix, SignSystem};
use crate::poly::{IntPolynomial, PolyRing};

fn check_distinct(n: usize, indices: &[usize]) -> Result<()> {
    for (a, &x) in indices.iter().enumerate() {
        if !(1..=n).contains(&x) {
            return Err(Error::argument(format!("index {x} out of 1..={n}")));
        }
        if indices[a + 1..].contains(&x) {
            return Err(Error::argument(format!("repeated index {x}")));
        }
    }
    Ok(())
}

/// The linear form v_p = sum_i Omega_pi x_i in Z[x1..xk].
pub fn v_class(om: &OmegaMatrix, p: usize) -> Result<IntPolynomial> {
    if !om.is_valid() {
        return Err(Error::state(om.check_condition().to_string()));
    }
    let n = om.n();
    if !(1..=n).contains(&p) {
        return Err(Error::argument(format!("row {p} out of 1..={n}")));
    }
    let ring = PolyRing::x_ring(om.k());
    let mut acc = ring.zero();
    for i in 1..=om.k() {
        acc = acc.add(&ring.var(i - 1).scale(om.entry(p, i)))?;
    }
    Ok(acc)
}

/// rho_pqr = eps^p_q u_p u_q + eps^q_r u_q u_r + eps^r_p u_r u_p.
pub fn rho_u(eps: &SignSystem, p: usize, q: usize, r: usize) -> Result<IntPolynomial> {
    let n = eps.n();
    check_distinct(n, &[p, q, r])?;
    let ring = PolyRing::u_ring(n);
    let term = |a: usize, b: usize| {
        ring.var(a - 1)
            .mul(&ring.var(b - 1))
            .expect("same ring")
            .scale(&BigInt::from(eps.eps(a, b)))
    };
    term(p, q).add(&term(q, r))?.add(&term(r, p))
}

/// The ring map sending u_p to v_p, i.e. pullback along B Omega.
pub fn bomega_star(om: &OmegaMatrix, f: &IntPolynomial) -> Result<IntPolynomial> {
    let target = PolyRing::x_ring(om.k());
    let images: Vec<IntPolynomial> = (1..=om.n())
        .map(|p| v_class(om, p))
        .collect::<Result<_>>()?;
    f.substitute(&target, &images)
}

/// rho_pqr pushed into the x-ring: eps^p_q v_p v_q + eps^q_r v_q v_r +
/// eps^r_p v_r v_p, computed by substituting v for u in `rho_u`.
pub fn rho_x(om: &OmegaMatrix, p: usize, q: usize, r: usize) -> Result<IntPolynomial> {
    let eps = om.sign_epsilon()?;
    bomega_star(om, &rho_u(&eps, p, q, r)?)
}

/// Or_pqr = eps^p_q eps^q_r eps^r_p for ordered distinct triples,
/// materialized as a totally antisymmetric table.
#[derive(Clone, Debug)]
pub struct OrientationTable {
    n: usize,
    /// Values on sorted triples p < q < r, lexicographic.
    sorted: Vec<i8>,
}

pub fn orientation_table(eps: &SignSystem) -> OrientationTable {
    let n = eps.n();
    let sorted = triples(n)
        .map(|(p, q, r)| eps.orientation(p, q, r))
        .collect();
    OrientationTable { n, sorted }
}

impl OrientationTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Or for any ordered distinct triple, via total antisymmetry.
    pub fn or(&self, p: usize, q: usize, r: usize) -> i8 {
        assert!(p != q && q != r && p != r, "indices must be distinct");
        let mut v = [p, q, r];
        let mut parity = 1i8;
        // Sort the three indices, tracking the permutation sign.
        for i in 0..2 {
            for j in 0..2 - i {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    parity = -parity;
                }
            }
        }
        parity * self.sorted[triple_index(self.n, v[0], v[1], v[2])]
    }

    /// Or_pqr + Or_prs + Or_psq = Or_qrs.
    pub fn cocycle_holds(&self, p: usize, q: usize, r: usize, s: usize) -> bool {
        let lhs = self.or(p, q, r) as i32 + self.or(p, r, s) as i32 + self.or(p, s, q) as i32;
        lhs == self.or(q, r, s) as i32
    }
}

fn triple_index(n: usize, p: usize, q: usize, r: usize) -> usize {
    // Position of p < q < r in the lexicographic triple list.
    triples(n)
        .position(|t| t == (p, q, r))
        .expect("triple in range")
}

/// The proof identity behind the cubic ideal membership:
/// Or_pqr [eps^q_s eps^r_s u_p rho_qrs + eps^r_s eps^p_s u_q rho_rps
///         + eps^p_s eps^q_s u_r rho_pqs] = -u_p u_q u_r.
pub fn ideal_identity_check(
    om: &OmegaMatrix,
    p: usize,
    q: usize,
    r: usize,
    s: usize,
) -> Result<bool> {
    let eps = om.sign_epsilon()?;
    let n = eps.n();
    check_distinct(n, &[p, q, r, s])?;
    let ring = PolyRing::u_ring(n);
    let uvar = |a: usize| ring.var(a - 1);
    let piece = |a: usize, b: usize, carrier: usize, t: (usize, usize, usize)| -> Result<IntPolynomial> {
        let sign = BigInt::from(eps.eps(a, s) * eps.eps(b, s));
        Ok(uvar(carrier)
            .mul(&rho_u(&eps, t.0, t.1, t.2)?)?
            .scale(&sign))
    };
    let sum = piece(q, r, p, (q, r, s))?
        .add(&piece(r, p, q, (r, p, s))?)?
        .add(&piece(p, q, r, (p, q, s))?)?;
    let lhs = sum.scale(&BigInt::from(eps.orientation(p, q, r)));
    let rhs = uvar(p).mul(&uvar(q))?.mul(&uvar(r))?.neg();
    lhs.equal(&rhs)
}

/// A membership witness: target = sum of coefficient * rho_(a,b,c),
/// re-verifiable by exact polynomial arithmetic.
#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    pub target: IntPolynomial,
    /// (coefficient polynomial, rho index) pairs.
    pub terms: Vec<(IntPolynomial, (usize, usize, usize))>,
    /// The multiple of u_p u_q u_r solved for while reducing
    /// u_p rho_pqr, when that step was needed.
    pub solved_multiple: Option<BigInt>,
}

impl MembershipCertificate {
    /// Recomputes the combination and compares it with the target.
    pub fn verify(&self, eps: &SignSystem) -> Result<bool> {
        let ring = PolyRing::u_ring(eps.n());
        let mut acc = ring.zero();
        for (coeff, (a, b, c)) in &self.terms {
            acc = acc.add(&coeff.mul(&rho_u(eps, *a, *b, *c)?)?)?;
        }
        acc.equal(&self.target)
    }
}

fn pick_other(n: usize, used: &[usize]) -> Result<usize> {
    (1..=n)
        .find(|x| !used.contains(x))
        .ok_or_else(|| Error::argument("no spare index: need k >= 2".to_string()))
}

/// Certificate for u_p u_q u_r, from the four-index proof identity with
/// s the smallest spare index.
pub fn triple_product_certificate(
    eps: &SignSystem,
    p: usize,
    q: usize,
    r: usize,
) -> Result<MembershipCertificate> {
    let n = eps.n();
    check_distinct(n, &[p, q, r])?;
    let s = pick_other(n, &[p, q, r])?;
    let ring = PolyRing::u_ring(n);
    let or = BigInt::from(eps.orientation(p, q, r));
    let coeff = |a: usize, b: usize, carrier: usize| {
        let sign = BigInt::from(eps.eps(a, s) * eps.eps(b, s));
        ring.var(carrier - 1).scale(&(-&or * sign))
    };
    let target = ring
        .var(p - 1)
        .mul(&ring.var(q - 1))?
        .mul(&ring.var(r - 1))?;
    Ok(MembershipCertificate {
        target,
        terms: vec![
            (coeff(q, r, p), (q, r, s)),
            (coeff(r, p, q), (r, p, s)),
            (coeff(p, q, r), (p, q, s)),
        ],
        solved_multiple: None,
    })
}

/// Certificate for eps^p_q u_p^2 u_q - eps^p_r u_p^2 u_r, by reducing
/// u_p rho_pqr with a multiple of u_p u_q u_r. The multiple is solved
/// for by matching the u_p u_q u_r coefficient, not assumed.
pub fn square_difference_certificate(
    eps: &SignSystem,
    p: usize,
    q: usize,
    r: usize,
) -> Result<MembershipCertificate> {
    let n = eps.n();
    check_distinct(n, &[p, q, r])?;
    let ring = PolyRing::u_ring(n);
    let up = ring.var(p - 1);
    let product = up.mul(&rho_u(eps, p, q, r)?)?;
    // Coefficient of u_p u_q u_r in u_p rho_pqr.
    let mut exps = vec![0u32; n];
    exps[p - 1] = 1;
    exps[q - 1] = 1;
    exps[r - 1] = 1;
    let c = product.coefficient(&exps);
    let triple = triple_product_certificate(eps, p, q, r)?;
    let mut terms = vec![(up, (p, q, r))];
    for (coeff, idx) in &triple.terms {
        terms.push((coeff.scale(&-&c), *idx));
    }
    let target = product.sub(&triple.target.scale(&c))?;
    // The target must be exactly the two-term difference of squares.
    let expected = {
        let m = |a: usize, b: usize, sign: i8| {
            let mut e = vec![0u32; n];
            e[a - 1] = 2;
            e[b - 1] = 1;
            ring.monomial(e, BigInt::from(sign))
        };
        m(p, q, eps.eps(p, q)).add(&m(p, r, -eps.eps(p, r)))?
    };
    if !target.equal(&expected)? {
        return Err(Error::internal(format!(
            "square-difference reduction for ({p},{q},{r}) left {target}, expected {expected}"
        )));
    }
    Ok(MembershipCertificate {
        target,
        terms,
        solved_multiple: Some(c),
    })
}

/// Certificate for u_p^2 u_q^2: multiply the square-difference witness by
/// eps^p_q u_q and cancel the leftover cubic with the triple-product
/// witness.
pub fn square_square_certificate(
    eps: &SignSystem,
    p: usize,
    q: usize,
) -> Result<MembershipCertificate> {
    let n = eps.n();
    check_distinct(n, &[p, q])?;
    let r = pick_other(n, &[p, q])?;
    let ring = PolyRing::u_ring(n);
    let epq = BigInt::from(eps.eps(p, q));
    let epr = BigInt::from(eps.eps(p, r));
    let uq_scaled = ring.var(q - 1).scale(&epq);
    let diff = square_difference_certificate(eps, p, q, r)?;
    let triple = triple_product_certificate(eps, p, q, r)?;
    let mut terms = Vec::new();
    for (coeff, idx) in &diff.terms {
        terms.push((coeff.mul(&uq_scaled)?, *idx));
    }
    let up_scaled = ring.var(p - 1).scale(&(&epq * &epr));
    for (coeff, idx) in &triple.terms {
        terms.push((coeff.mul(&up_scaled)?, *idx));
    }
    let mut exps = vec![0u32; n];
    exps[p - 1] = 2;
    exps[q - 1] = 2;
    let target = ring.monomial(exps, BigInt::one());
    Ok(MembershipCertificate {
        target,
        terms,
        solved_multiple: diff.solved_multiple,
    })
}

/// Builds and verifies every ideal-membership certificate: the cubic
/// u_p u_q u_r over all ordered triples, the square differences over all
/// ordered triples, and u_p^2 u_q^2 over all ordered pairs. Needs k >= 2
/// so that a fourth index is available.
pub fn ideal_membership_suite(om: &OmegaMatrix) -> Result<bool> {
    let eps = om.sign_epsilon()?;
    let n = om.n();
    if om.k() < 2 {
        return Err(Error::argument(
            "ideal membership certificates need k >= 2".to_string(),
        ));
    }
    for p in 1..=n {
        for q in 1..=n {
            if q == p {
                continue;
            }
            if !square_square_certificate(&eps, p, q)?.verify(&eps)? {
                return Ok(false);
            }
            for r in 1..=n {
                if r == p || r == q {
                    continue;
                }
                if !triple_product_certificate(&eps, p, q, r)?.verify(&eps)? {
                    return Ok(false);
                }
                if !square_difference_certificate(&eps, p, q, r)?.verify(&eps)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
