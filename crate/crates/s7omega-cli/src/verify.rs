//! The lemma-level verification suites behind `s7omega verify`. Every
//! corpus is generated from the master seed, so identical flags give
//! byte-identical output.

use std::process::ExitCode;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use s7omega::classes::{ideal_identity_check, ideal_membership_suite, orientation_table};
use s7omega::cohomology::{gcd_over_trees, order_cross_check, vp_square_relation_check};
use s7omega::error::{Error, Result};
use s7omega::families::random_valid_omega;
use s7omega::idx::quadruples;
use s7omega::omega::OmegaMatrix;
use s7omega::trees::{matrix_tree_check, symbolic_matrix_tree, EdgeWeights};

use crate::{tree_budget, VerifyArgs, EXIT_INTERNAL};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    All,
    Plucker,
    Cycle,
    Ideal,
    Matrixtree,
    Gcd,
    Order,
}

struct SuiteResult {
    name: &'static str,
    pass: bool,
    detail: String,
}

pub fn run(args: &VerifyArgs) -> Result<ExitCode> {
    let budget = tree_budget(args.tree_budget);
    let scopes: Vec<Scope> = match args.scope {
        Scope::All => vec![
            Scope::Plucker,
            Scope::Cycle,
            Scope::Ideal,
            Scope::Matrixtree,
            Scope::Gcd,
            Scope::Order,
        ],
        s => vec![s],
    };
    let mut all_pass = true;
    for scope in scopes {
        let result = match scope {
            Scope::All => unreachable!("expanded above"),
            Scope::Plucker => plucker_suite(args)?,
            Scope::Cycle => cycle_suite(args)?,
            Scope::Ideal => ideal_suite(args)?,
            Scope::Matrixtree => matrixtree_suite(args, budget)?,
            Scope::Gcd => gcd_suite(args, budget)?,
            Scope::Order => order_suite(args, budget)?,
        };
        println!(
            "{}: {} ({})",
            result.name,
            if result.pass { "pass" } else { "FAIL" },
            result.detail
        );
        all_pass &= result.pass;
    }
    if all_pass {
        println!("all suites passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("SUITE FAILURES");
        Ok(ExitCode::from(EXIT_INTERNAL))
    }
}

/// Per-suite seed, fanned out from the master seed.
fn suite_seed(master: u64, salt: u64, index: u64) -> u64 {
    master
        .wrapping_mul(0x9e3779b97f4a7c15)
        .wrapping_add(salt.wrapping_mul(0x517cc1b727220a95))
        .wrapping_add(index)
}

fn random_raw_omega(rng: &mut ChaCha8Rng, k: usize, bound: i64) -> OmegaMatrix {
    loop {
        let rows: Vec<Vec<BigInt>> = (0..k + 2)
            .map(|_| {
                (0..k)
                    .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                    .collect()
            })
            .collect();
        if let Ok(om) = OmegaMatrix::new(rows) {
            return om;
        }
    }
}

/// Sign-existence of the three-term minor relation on every 4-subset of
/// random, not necessarily valid, matrices.
fn plucker_suite(args: &VerifyArgs) -> Result<SuiteResult> {
    let k = args.k.max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(suite_seed(args.seed, 1, 0));
    let mut subsets = 0usize;
    let mut pass = true;
    for _ in 0..args.count {
        let om = random_raw_omega(&mut rng, k, args.bound.max(1));
        for (p, q, r, s) in quadruples(om.n()) {
            subsets += 1;
            if !om.plucker_check(p, q, r, s)? {
                pass = false;
            }
        }
    }
    Ok(SuiteResult {
        name: "plucker",
        pass,
        detail: format!("{} matrices, {} quadruples", args.count, subsets),
    })
}

/// Kernel vectors annihilate Omega^t, the adjacency graph is one
/// (k+2)-cycle, and the orientation cocycle identity holds.
fn cycle_suite(args: &VerifyArgs) -> Result<SuiteResult> {
    let k = args.k.max(2);
    let mut pass = true;
    let mut cocycles = 0usize;
    for i in 0..args.count {
        let om = random_valid_omega(k, args.bound.max(1), suite_seed(args.seed, 2, i as u64))?;
        let n = om.n();
        for p in 1..=n {
            let w = om.kernel_vector(p)?;
            for col in 1..=om.k() {
                let dot: BigInt = (1..=n).map(|q| &w[q - 1] * om.entry(q, col)).sum();
                if !dot.is_zero() {
                    pass = false;
                }
            }
        }
        match om.adjacency_graph() {
            Ok(g) => {
                if g.degenerate || g.edges.len() != n {
                    pass = false;
                }
            }
            Err(_) => pass = false,
        }
        let table = orientation_table(&om.sign_epsilon()?);
        for (p, q, r, s) in quadruples(n) {
            cocycles += 1;
            if !table.cocycle_holds(p, q, r, s) {
                pass = false;
            }
        }
    }
    Ok(SuiteResult {
        name: "cycle",
        pass,
        detail: format!(
            "{} matrices at k = {k}, {} cocycle identities",
            args.count, cocycles
        ),
    })
}

/// The cubic proof identity on all ordered 4-tuples, the three
/// membership certificate families, and the vanishing of
/// sum |Delta_pq| eps^p_q v_p v_q.
fn ideal_suite(args: &VerifyArgs) -> Result<SuiteResult> {
    let k = args.k.clamp(2, 3);
    let mut pass = true;
    let mut identities = 0usize;
    for i in 0..args.count {
        let om = random_valid_omega(k, args.bound.max(1), suite_seed(args.seed, 3, i as u64))?;
        let n = om.n();
        for (p, q, r, s) in quadruples(n) {
            for perm in [
                (p, q, r, s),
                (q, r, s, p),
                (r, s, p, q),
                (s, q, p, r),
            ] {
                identities += 1;
                if !ideal_identity_check(&om, perm.0, perm.1, perm.2, perm.3)? {
                    pass = false;
                }
            }
        }
        if !ideal_membership_suite(&om)? {
            pass = false;
        }
        if !vp_square_relation_check(&om)? {
            pass = false;
        }
    }
    Ok(SuiteResult {
        name: "ideal",
        pass,
        detail: format!(
            "{} matrices at k = {k}, {} proof identities",
            args.count, identities
        ),
    })
}

/// Symbolic matrix-tree identity for n = 2..5 plus numeric checks on
/// random weight systems.
fn matrixtree_suite(args: &VerifyArgs, budget: usize) -> Result<SuiteResult> {
    let mut pass = true;
    for n in 2..=5 {
        if !symbolic_matrix_tree(n)? {
            pass = false;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(suite_seed(args.seed, 4, 0));
    let wmax = args.bound.max(2);
    let mut numeric = 0usize;
    for i in 0..args.count {
        let n = 2 + (i % 5);
        if n > budget {
            continue;
        }
        let w = EdgeWeights::new(n, |_, _| BigInt::from(rng.gen_range(1..=wmax)))?;
        numeric += 1;
        if !matrix_tree_check(&w, budget)? {
            pass = false;
        }
    }
    Ok(SuiteResult {
        name: "matrixtree",
        pass,
        detail: format!("symbolic n = 2..5, {numeric} numeric weight systems"),
    })
}

/// gcd over spanning-tree products of |Delta_pq| is 1.
fn gcd_suite(args: &VerifyArgs, budget: usize) -> Result<SuiteResult> {
    let mut pass = true;
    let mut checked = 0usize;
    for i in 0..args.count {
        let k = 1 + (i % args.k.max(1));
        let om = random_valid_omega(k, args.bound.max(1), suite_seed(args.seed, 5, i as u64))?;
        if om.n() > budget {
            continue;
        }
        checked += 1;
        match gcd_over_trees(&om, budget) {
            Ok(g) if g.is_one() => {}
            Ok(_) | Err(Error::Internal(_)) => pass = false,
            Err(e) => return Err(e),
        }
    }
    Ok(SuiteResult {
        name: "gcd",
        pass,
        detail: format!("{checked} matrices, k <= {}", args.k.max(1)),
    })
}

/// Four-way agreement of |G_Omega|.
fn order_suite(args: &VerifyArgs, budget: usize) -> Result<SuiteResult> {
    let mut pass = true;
    for i in 0..args.count {
        let k = 1 + (i % args.k.max(1));
        let om = random_valid_omega(k, args.bound.max(1), suite_seed(args.seed, 6, i as u64))?;
        let ledger = order_cross_check(&om, budget)?;
        if !ledger.agree {
            pass = false;
        }
    }
    Ok(SuiteResult {
        name: "order",
        pass,
        detail: format!("{} matrices, k <= {}", args.count, args.k.max(1)),
    })
}
