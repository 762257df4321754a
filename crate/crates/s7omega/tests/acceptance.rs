//! Acceptance suite: one test per criterion, printing a pass line when
//! the criterion holds (run with `-- --nocapture` to see them all).
//! Every assertion is exact integer equality.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use s7omega::classes::{ideal_identity_check, ideal_membership_suite, orientation_table};
use s7omega::cohomology::{
    cohomology_report, gcd_over_trees, k1_closed_form, order_cross_check, pontryagin_class,
    pontryagin_via_vr, torsion_group, vp_square_relation_check,
};
use s7omega::families::{bgmr_family, random_valid_omega, BgmrParams};
use s7omega::idx::{pairs, quadruples};
use s7omega::linalg::IntMatrix;
use s7omega::omega::OmegaMatrix;
use s7omega::poly::PolyRing;
use s7omega::trees::{
    enumerate_trees, identity_ordering, laplacian_minor, symbolic_det, symbolic_laplacian_minor,
    symbolic_matrix_tree, EdgeWeights, LabeledTree,
};

const TREE_BUDGET: usize = 9;

fn worked_omega() -> OmegaMatrix {
    OmegaMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[1, 2], &[3, 1]]).unwrap()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Criterion 1: for k = 1 the Smith-normal-form order equals the closed
/// form r = |D12||D13| + |D21||D23| + |D31||D32|.
#[test]
fn criterion_1_k1_closed_form() {
    for seed in 0..25u64 {
        let om = random_valid_omega(1, 30, 1000 + seed).unwrap();
        let order = torsion_group(&om).unwrap().order().unwrap();
        let r = k1_closed_form(&om).unwrap();
        assert_eq!(order, r, "seed {seed}");
    }
    println!("criterion 1 (k=1 closed form, 25 matrices): PASS");
}

/// Criterion 2 (and 7): four-way order agreement on 200 random valid
/// Omega with k in 1..=5, plus the torsion bound |G| >= (k+2)^k.
#[test]
fn criterion_2_and_7_four_way_agreement_and_bound() {
    for i in 0..200u64 {
        let k = 1 + (i % 5) as usize;
        let om = random_valid_omega(k, 4, 2000 + i).unwrap();
        let ledger = order_cross_check(&om, TREE_BUDGET).unwrap();
        assert!(ledger.agree, "instance {i} (k = {k}) disagrees");
        let tree_sum = ledger.tree_sum.expect("within budget");
        assert_eq!(tree_sum, ledger.det_m);
        // Criterion 7: the tree-count bound.
        let bound = BigInt::from(k + 2).pow(k as u32);
        assert!(
            ledger.snf_product >= bound,
            "instance {i}: |G| = {} below {bound}",
            ledger.snf_product
        );
    }
    println!("criterion 2 (four-way order agreement, 200 matrices): PASS");
    println!("criterion 7 (torsion bound (k+2)^k, 200 matrices): PASS");
}

/// Brute-force spanning-tree oracle, independent of the Pruefer path:
/// enumerate all (n-1)-subsets of edges and keep those forming a tree.
fn tree_sum_by_subsets(w: &EdgeWeights) -> BigInt {
    let n = w.n();
    let all_edges: Vec<(usize, usize)> = pairs(n).collect();
    let mut acc = BigInt::zero();
    let mut chosen = vec![0usize; n - 1];
    fn rec(
        edges: &[(usize, usize)],
        w: &EdgeWeights,
        n: usize,
        start: usize,
        depth: usize,
        chosen: &mut [usize],
        acc: &mut BigInt,
    ) {
        if depth == chosen.len() {
            let subset: Vec<(usize, usize)> = chosen.iter().map(|&i| edges[i]).collect();
            if LabeledTree::new(n, subset.clone()).is_ok() {
                let mut prod = BigInt::one();
                for (p, q) in subset {
                    prod *= w.weight(p, q);
                }
                *acc += prod;
            }
            return;
        }
        for i in start..edges.len() {
            chosen[depth] = i;
            rec(edges, w, n, i + 1, depth + 1, chosen, acc);
        }
    }
    rec(&all_edges, w, n, 0, 0, &mut chosen, &mut acc);
    acc
}

/// Criterion 3: the worked 4 x 2 instance, with the enumeration oracle
/// confirming 124 before the main paths are trusted.
#[test]
fn criterion_3_worked_instance() {
    let om = worked_omega();
    let lex: Vec<i64> = om
        .minors_lex()
        .iter()
        .map(|d| i64::try_from(d).unwrap())
        .collect();
    assert_eq!(lex, vec![-5, -3, -1, 1, 2, 1]);

    let weights = EdgeWeights::new(4, |p, q| om.minor(p, q).unwrap().abs()).unwrap();
    let oracle = tree_sum_by_subsets(&weights);
    assert_eq!(oracle, BigInt::from(124), "subset-enumeration oracle");

    let m = laplacian_minor(&weights, &identity_ordering(4)).unwrap();
    assert_eq!(
        m,
        IntMatrix::from_i64_rows(&[&[8, -1, -2], &[-1, 5, -1], &[-2, -1, 4]])
    );

    let ledger = order_cross_check(&om, TREE_BUDGET).unwrap();
    assert!(ledger.agree);
    assert_eq!(ledger.tree_sum, Some(BigInt::from(124)));
    assert_eq!(ledger.det_m, BigInt::from(124));
    assert_eq!(ledger.snf_product, BigInt::from(124));
    assert_eq!(ledger.relations_det, BigInt::from(124));
    println!("criterion 3 (worked instance, |G| = 124 four ways): PASS");
}

/// Criterion 4: Cayley counts n^(n-2) for n = 2..7, all trees distinct.
#[test]
fn criterion_4_cayley_counts() {
    let expected = [(2usize, 1usize), (3, 3), (4, 16), (5, 125), (6, 1296), (7, 16807)];
    for (n, count) in expected {
        let mut seen = BTreeSet::new();
        let mut total = 0usize;
        for tree in enumerate_trees(n).unwrap() {
            assert_eq!(tree.edges().len(), n - 1);
            seen.insert(tree.edges().to_vec());
            total += 1;
        }
        assert_eq!(total, count, "n = {n}");
        assert_eq!(seen.len(), count, "n = {n} distinctness");
    }
    println!("criterion 4 (Cayley counts n=2..7): PASS");
}

/// Criterion 5: the symbolic matrix-tree identity for n = 2..5 with
/// squarefree monomials, and ordering invariance of the determinant for
/// n <= 4.
#[test]
fn criterion_5_symbolic_matrix_tree() {
    for n in 2..=5 {
        assert!(symbolic_matrix_tree(n).unwrap(), "n = {n}");
    }
    for n in 2..=4usize {
        let ring = PolyRing::pair_ring(n);
        let base = symbolic_det(
            &symbolic_laplacian_minor(n, &identity_ordering(n)).unwrap(),
            &ring,
        );
        let vertices: Vec<usize> = (1..=n).collect();
        for ordering in permutations(&vertices) {
            let det = symbolic_det(&symbolic_laplacian_minor(n, &ordering).unwrap(), &ring);
            assert!(det.equal(&base).unwrap(), "n = {n}, ordering {ordering:?}");
        }
    }
    println!("criterion 5 (symbolic matrix-tree n=2..5, ordering invariance n<=4): PASS");
}

fn lemma_suite_instances() -> Vec<OmegaMatrix> {
    let mut out = vec![worked_omega()];
    for i in 0..50u64 {
        let k = 2 + (i % 2) as usize;
        out.push(random_valid_omega(k, 5, 3000 + i).unwrap());
    }
    out
}

/// Criterion 6 (a)-(c): kernel vectors, the adjacency cycle, and the
/// orientation cocycle.
#[test]
fn criterion_6_kernel_cycle_cocycle() {
    for (idx, om) in lemma_suite_instances().iter().enumerate() {
        let n = om.n();
        for p in 1..=n {
            let w = om.kernel_vector(p).unwrap();
            for col in 1..=om.k() {
                let dot: BigInt = (1..=n).map(|q| &w[q - 1] * om.entry(q, col)).sum();
                assert!(dot.is_zero(), "instance {idx}: Omega^t w^{p} != 0");
            }
        }
        let graph = om.adjacency_graph().unwrap();
        assert!(!graph.degenerate, "instance {idx}");
        assert_eq!(graph.edges.len(), n, "instance {idx}");
        assert_eq!(graph.cycle_vertices().len(), n, "instance {idx}");
        let table = orientation_table(&om.sign_epsilon().unwrap());
        for (p, q, r, s) in quadruples(n) {
            assert!(table.cocycle_holds(p, q, r, s), "instance {idx}");
        }
    }
    println!("criterion 6a-c (kernel vectors, adjacency cycle, cocycle; 51 matrices): PASS");
}

/// Criterion 6 (d)-(f): the cubic proof identity on all ordered
/// 4-tuples, the membership certificates, and the vanishing of
/// sum |Delta_pq| eps^p_q v_p v_q.
#[test]
fn criterion_6_ideal_identities() {
    for (idx, om) in lemma_suite_instances().iter().enumerate() {
        let n = om.n();
        for (a, b, c, d) in quadruples(n) {
            for t in permutations(&[a, b, c, d]) {
                assert!(
                    ideal_identity_check(om, t[0], t[1], t[2], t[3]).unwrap(),
                    "instance {idx}, tuple {t:?}"
                );
            }
        }
        assert!(ideal_membership_suite(om).unwrap(), "instance {idx}");
        assert!(vp_square_relation_check(om).unwrap(), "instance {idx}");
    }
    println!("criterion 6d-f (ideal identity, membership certificates, v_p relations): PASS");
}

/// Criterion 6 (g): gcd over spanning-tree products is 1.
#[test]
fn criterion_6_gcd_over_trees() {
    for (idx, om) in lemma_suite_instances().iter().enumerate() {
        let g = gcd_over_trees(om, TREE_BUDGET).unwrap();
        assert!(g.is_one(), "instance {idx}");
    }
    println!("criterion 6g (gcd over tree products = 1; 51 matrices): PASS");
}

/// Criterion 6 (h): Pluecker sign-existence on all 4-subsets of 1000
/// random 5 x 3 matrices, valid or not.
#[test]
fn criterion_6_plucker_on_raw_matrices() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4000);
    let mut checked = 0usize;
    for _ in 0..1000 {
        let rows: Vec<Vec<BigInt>> = (0..5)
            .map(|_| (0..3).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect())
            .collect();
        let om = OmegaMatrix::new(rows).unwrap();
        for (p, q, r, s) in quadruples(5) {
            assert!(om.plucker_check(p, q, r, s).unwrap());
            checked += 1;
        }
    }
    assert_eq!(checked, 5000);
    println!("criterion 6h (Pluecker on 1000 raw matrices, 5000 quadruples): PASS");
}

/// Criterion 8: the prime block families have strictly growing torsion,
/// each beyond its largest prime parameter. Orders frozen from the
/// four-way ledger.
#[test]
fn criterion_8_unbounded_torsion() {
    let instances: [([i64; 2], [i64; 2], i64, i64); 3] = [
        ([2, 3], [5, 7], 7, 394),
        ([11, 13], [17, 19], 19, 24884),
        ([23, 29], [31, 37], 37, 284052),
    ];
    let mut previous = BigInt::zero();
    for (a, b, max_prime, expected) in instances {
        let om = bgmr_family(&BgmrParams::from_i64(&a, &b).unwrap()).unwrap();
        let ledger = order_cross_check(&om, TREE_BUDGET).unwrap();
        assert!(ledger.agree);
        let order = ledger.snf_product.clone();
        assert_eq!(order, BigInt::from(expected));
        assert!(order > BigInt::from(max_prime));
        assert!(order > previous, "orders must grow strictly");
        previous = order;
    }
    println!("criterion 8 (unbounded torsion on prime families): PASS");
}

/// Criterion 9: the Pontrjagin image agrees between the cup-product
/// normal form and the V/R presentation route, on 50 random valid Omega.
#[test]
fn criterion_9_pontryagin_two_routes() {
    for i in 0..50u64 {
        let k = 1 + (i % 4) as usize;
        let om = random_valid_omega(k, 4, 5000 + i).unwrap();
        let (_, direct) = pontryagin_class(&om).unwrap();
        let via_vr = pontryagin_via_vr(&om).unwrap();
        assert_eq!(direct, via_vr, "instance {i} (k = {k})");
    }
    println!("criterion 9 (p1 agreement across presentations, 50 matrices): PASS");
}

/// The assembled report is valid on the canonical instances; its JSON
/// carries orders as decimal strings.
#[test]
fn report_assembly_sanity() {
    let om = OmegaMatrix::from_i64_rows(&[&[1], &[1], &[1]]).unwrap();
    let report = cohomology_report(&om, TREE_BUDGET).unwrap();
    assert!(report.valid);
    assert_eq!(report.betti, [1, 0, 1, 0, 0, 1, 0, 1]);
    assert_eq!(report.k1_r, Some(BigInt::from(3)));
    let json = report.to_json();
    assert_eq!(json["torsion"]["order"], "3");
    assert_eq!(json["k1_r"], "3");

    let report2 = cohomology_report(&worked_omega(), TREE_BUDGET).unwrap();
    assert!(report2.valid, "{:?}", report2.diagnostics);
    assert_eq!(report2.order(), BigInt::from(124));
}
