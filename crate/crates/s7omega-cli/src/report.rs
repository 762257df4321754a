//! Human-readable rendering of a cohomology report, with enough of the
//! intermediate data (minors, signs, ledger) to trace every number.

use s7omega::cohomology::CohomologyReport;
use s7omega::idx::pairs;
use s7omega::linalg::GroupElement;
use s7omega::omega::OmegaMatrix;

fn element_str(e: &GroupElement) -> String {
    if e.is_identity() {
        return "0".to_string();
    }
    let parts: Vec<String> = e.residues.iter().map(|r| r.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn render_text(om: &OmegaMatrix, report: &CohomologyReport) -> String {
    let mut out = String::new();
    let n = om.n();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };

    push(&mut out, format!("S^7_Ω for a {} x {} matrix (k = {})", n, om.k(), om.k()));
    push(&mut out, String::new());
    push(&mut out, "minors Δ_pq (rows p, q deleted):".to_string());
    for (p, q) in pairs(n) {
        push(
            &mut out,
            format!("  Δ_{p}{q} = {}", om.minor(p, q).expect("in range")),
        );
    }
    if let Ok(eps) = om.sign_epsilon() {
        let signs: Vec<String> = pairs(n)
            .map(|(p, q)| {
                format!("ε^{p}_{q} = {}", if eps.eps(p, q) > 0 { "+1" } else { "-1" })
            })
            .collect();
        push(&mut out, format!("signs: {}", signs.join(", ")));
    }
    push(&mut out, String::new());

    let betti: Vec<String> = report.betti.iter().map(|b| b.to_string()).collect();
    push(
        &mut out,
        format!("Betti table (H^0..H^7 free ranks): {}", betti.join(" ")),
    );
    push(
        &mut out,
        format!(
            "G_Ω = H^4 = {} of order {}",
            report.torsion,
            report.order()
        ),
    );
    push(&mut out, String::new());

    push(&mut out, "order ledger:".to_string());
    match &report.order_ledger.tree_sum {
        Some(v) => push(&mut out, format!("  tree sum Σ_t Π |Δ_pq|: {v}")),
        None => push(&mut out, "  tree sum: skipped (over budget)".to_string()),
    }
    push(&mut out, format!("  |det M|: {}", report.order_ledger.det_m));
    push(
        &mut out,
        format!("  Π invariant factors: {}", report.order_ledger.snf_product),
    );
    push(
        &mut out,
        format!("  |det relations matrix|: {}", report.order_ledger.relations_det),
    );
    push(
        &mut out,
        format!(
            "  agreement: {}",
            if report.order_ledger.agree { "yes" } else { "NO" }
        ),
    );
    push(&mut out, String::new());

    push(
        &mut out,
        "cup products x_i x_j in invariant-factor coordinates:".to_string(),
    );
    for (i, j, e) in &report.cup_table {
        let label = if i == j {
            format!("x{i}^2")
        } else {
            format!("x{i}*x{j}")
        };
        push(&mut out, format!("  {label} -> {}", element_str(e)));
    }
    push(&mut out, String::new());
    push(
        &mut out,
        format!("p₁(S^7_Ω) = {} -> {}", report.p1_polynomial, element_str(&report.p1_element)),
    );
    if let Some(r) = &report.k1_r {
        push(
            &mut out,
            format!("k = 1 closed form: r = {r} (matches |G_Ω|)"),
        );
    }
    push(
        &mut out,
        format!(
            "torsion bound |G_Ω| >= (k+2)^k: {}",
            if report.bound_ok { "holds" } else { "VIOLATED" }
        ),
    );
    if !report.diagnostics.is_empty() {
        push(&mut out, String::new());
        push(&mut out, "DIAGNOSTICS (report invalid):".to_string());
        for d in &report.diagnostics {
            push(&mut out, format!("  - {d}"));
        }
    }
    out
}
