//! The Chevalley basis of g2: structure constants, root datum, and the
//! four-dimensional representation of the Levi on V.
//!
//! `cargo run --example chevalley_table`

use g2_cubic::forms::levi_action_on_forms;
use g2_cubic::g2::{
    self, basis_label, build_chevalley_table, format_mat4, grading_violations, jacobi_violations, levi_action_matrix,
    levi_indices, root_datum, LieElement, DIM,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = build_chevalley_table();
    println!("basis: {}", (0..DIM).map(|i| basis_label(i).to_string()).collect::<Vec<_>>().join(" "));

    let rd = root_datum();
    println!("positive roots:");
    for a in rd.positive_roots {
        println!("  {a}  |a|^2 = {}  short = {}", a.norm2(), a.is_short());
    }
    for j in 0..2 {
        for k in 0..2 {
            println!("<alpha{}^v, w{}> = {}", j + 1, k + 1, rd.coroot_weight_pairing(j, k));
        }
    }

    println!("N(a, b) on positive pairs:");
    for &a in &rd.positive_roots {
        for &b in &rd.positive_roots {
            if (a + b).is_root() {
                println!("  N({a}, {b}) = {}", t.n_const(a, b));
            }
        }
    }
    println!("jacobi violations: {}", jacobi_violations(t).len());
    println!("grading violations: {}", grading_violations(t).len());

    println!("Levi on V, ad-restriction vs twisted cubic action:");
    for i in levi_indices() {
        let y = LieElement::basis(i);
        println!("  {:>10}  ad|V = {}", basis_label(i).to_string(), format_mat4(&levi_action_matrix(&y)?));
        let m = levi_action_on_forms(&y)?;
        let rows: Vec<String> = m.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")).collect();
        println!("  {:>10}  cubic = {}", "", rows.join(";"));
    }
    // the two differ by x -> -D^-1 x D with D = diag(1, 1/3, 1/3, 1)
    println!("mismatches after the identification: {}", g2_cubic::forms::levi_mismatches());
    println!("weights of alpha1^v on V: {:?}", g2::v_weight_spectrum());
    Ok(())
}
