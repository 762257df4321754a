//! Finitely generated abelian groups presented as cokernels of integer
//! relation matrices, with a fixed normal form for elements.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{row_vec_mul, smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// Z^n / row-span(A) in invariant-factor normal form.
///
/// Factors equal to 1 are dropped; the stored factors are >= 2 and form a
/// divisibility chain. The coordinate map is the unimodular V of the Smith
/// decomposition of the relations matrix: normal-form coordinates of a
/// generator-coordinate vector z are z * V.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    generator_count: usize,
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    /// Columns of the coordinate map carrying each invariant factor >= 2.
    factor_cols: Vec<usize>,
    /// Columns of the coordinate map carrying the free part.
    free_cols: Vec<usize>,
    coordinate_map: IntMatrix,
    coordinate_map_inv: IntMatrix,
}

/// An element in normal form: one residue per invariant factor and one
/// integer per free generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub residues: Vec<BigInt>,
    pub free_part: Vec<BigInt>,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.residues.iter().all(Zero::is_zero) && self.free_part.iter().all(Zero::is_zero)
    }
}

/// The abelian group presented by A: rows are relations, columns are generators.
pub fn cokernel(a: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(a);
    let n = a.cols();
    let mut invariant_factors = Vec::new();
    let mut factor_cols = Vec::new();
    let mut free_cols = Vec::new();
    for j in 0..n {
        let d = snf.diagonal.get(j).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            free_cols.push(j);
        } else if !d.is_one() {
            invariant_factors.push(d);
            factor_cols.push(j);
        }
    }
    AbelianGroup {
        generator_count: n,
        free_rank: free_cols.len(),
        invariant_factors,
        factor_cols,
        free_cols,
        coordinate_map: snf.v,
        coordinate_map_inv: snf.v_inv,
    }
}

impl AbelianGroup {
    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    /// Group order; None when the free rank is positive (infinite).
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .fold(BigInt::one(), |acc, d| acc * d),
        )
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            residues: vec![BigInt::zero(); self.invariant_factors.len()],
            free_part: vec![BigInt::zero(); self.free_rank],
        }
    }

    /// Normal form of an element given in presentation-generator coordinates.
    pub fn reduce_element(&self, coords: &[BigInt]) -> Result<GroupElement> {
        if coords.len() != self.generator_count {
            return Err(Error::argument(format!(
                "coordinate vector has length {}, group has {} generators",
                coords.len(),
                self.generator_count
            )));
        }
        let nf = row_vec_mul(coords, &self.coordinate_map);
        let residues = self
            .factor_cols
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&c, d)| nf[c].mod_floor(d))
            .collect();
        let free_part = self.free_cols.iter().map(|&c| nf[c].clone()).collect();
        Ok(GroupElement {
            residues,
            free_part,
        })
    }

    /// A presentation-generator coordinate vector mapping to the given element.
    pub fn representative(&self, e: &GroupElement) -> Result<Vec<BigInt>> {
        if e.residues.len() != self.invariant_factors.len() || e.free_part.len() != self.free_rank
        {
            return Err(Error::argument(
                "element shape does not match this group".to_string(),
            ));
        }
        let mut nf = vec![BigInt::zero(); self.generator_count];
        for (&c, r) in self.factor_cols.iter().zip(&e.residues) {
            nf[c] = r.clone();
        }
        for (&c, x) in self.free_cols.iter().zip(&e.free_part) {
            nf[c] = x.clone();
        }
        Ok(row_vec_mul(&nf, &self.coordinate_map_inv))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.invariant_factors)
            .map(|((x, y), d)| (x + y).mod_floor(d))
            .collect();
        let free_part = a
            .free_part
            .iter()
            .zip(&b.free_part)
            .map(|(x, y)| x + y)
            .collect();
        GroupElement {
            residues,
            free_part,
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
