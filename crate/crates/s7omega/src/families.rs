//! Generators of admissible Omega matrices: the explicit block family
//! [I_k; a; b] and rejection-sampled random matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::omega::OmegaMatrix;

/// Default cap on rejection-sampling attempts.
pub const DEFAULT_ATTEMPT_CAP: usize = 100_000;

/// Parameters of the block family: the matrix stacks the identity I_k on
/// the rows a and b. Admissibility needs every pair (a_i, b_i) coprime
/// and nonzero, and no two columns equal up to independent signs.
#[derive(Clone, Debug)]
pub struct BgmrParams {
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

impl BgmrParams {
    pub fn new(a: Vec<BigInt>, b: Vec<BigInt>) -> Result<BgmrParams> {
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::argument(format!(
                "need equal-length nonempty parameter vectors, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        for (i, (ai, bi)) in a.iter().zip(&b).enumerate() {
            // A zero entry would zero out a minor even though
            // gcd(0, 1) = 1 passes the coprimality test.
            if ai.is_zero() || bi.is_zero() {
                return Err(Error::argument(format!(
                    "pair {}: entries must be nonzero, got ({ai}, {bi})",
                    i + 1
                )));
            }
            if !ai.gcd(bi).is_one() {
                return Err(Error::argument(format!(
                    "pair {}: gcd({ai}, {bi}) != 1",
                    i + 1
                )));
            }
        }
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                let same_a = a[i] == a[j] || a[i] == -&a[j];
                let same_b = b[i] == b[j] || b[i] == -&b[j];
                if same_a && same_b {
                    return Err(Error::argument(format!(
                        "columns {} and {} agree up to sign: a = ({}, {}), b = ({}, {})",
                        i + 1,
                        j + 1,
                        a[i],
                        a[j],
                        b[i],
                        b[j]
                    )));
                }
            }
        }
        Ok(BgmrParams { a, b })
    }

    pub fn from_i64(a: &[i64], b: &[i64]) -> Result<BgmrParams> {
        BgmrParams::new(
            a.iter().map(|&x| BigInt::from(x)).collect(),
            b.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }
}

/// The (k+2) x k block matrix [I_k; a; b]. Its validity under the
/// reduction condition is re-checked instance by instance.
pub fn bgmr_family(params: &BgmrParams) -> Result<OmegaMatrix> {
    let k = params.k();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(k + 2);
    for i in 0..k {
        let mut row = vec![BigInt::zero(); k];
        row[i] = BigInt::one();
        rows.push(row);
    }
    rows.push(params.a.clone());
    rows.push(params.b.clone());
    let om = OmegaMatrix::new(rows)?;
    if !om.is_valid() {
        return Err(Error::internal(format!(
            "block family output failed the reduction condition: {}",
            om.check_condition()
        )));
    }
    Ok(om)
}

/// Rejection-samples matrices with entries uniform in
/// [-entry_bound, entry_bound] until one satisfies the reduction
/// condition. Deterministic for a fixed seed.
pub fn random_valid_omega(k: usize, entry_bound: i64, seed: u64) -> Result<OmegaMatrix> {
    random_valid_omega_capped(k, entry_bound, seed, DEFAULT_ATTEMPT_CAP)
}

pub fn random_valid_omega_capped(
    k: usize,
    entry_bound: i64,
    seed: u64,
    attempt_cap: usize,
) -> Result<OmegaMatrix> {
    if k < 1 {
        return Err(Error::argument("need k >= 1".to_string()));
    }
    if entry_bound < 1 {
        return Err(Error::argument("need entry_bound >= 1".to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempt_cap {
        let rows: Vec<Vec<BigInt>> = (0..k + 2)
            .map(|_| {
                (0..k)
                    .map(|_| BigInt::from(rng.gen_range(-entry_bound..=entry_bound)))
                    .collect()
            })
            .collect();
        let om = OmegaMatrix::new(rows)?;
        if om.is_valid() {
            return Ok(om);
        }
    }
    Err(Error::resource(format!(
        "no valid Omega found in {attempt_cap} attempts (k = {k}, bound = {entry_bound})"
    )))
}
