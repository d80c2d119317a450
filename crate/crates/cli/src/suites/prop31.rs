use hermite_riesz::sphere_calculus::prop31_all;
use hermite_riesz::Result;

use super::{worse, Collector};

pub(super) fn run(c: &mut Collector<'_>) -> Result<()> {
    let max_total = c.cfg.max_bidegree;
    for d in c.dims(&[1, 2]) {
        let reps = prop31_all(d, max_total)?;
        let worst = |f: &dyn Fn(&hermite_riesz::sphere_calculus::Prop31Report) -> f64| reps.iter().map(f).fold(0.0, worse);
        let items: [(&str, &str, f64); 7] = [
            ("conj_z_dot_gradient", "⟨z̄, ∇^z P⟩ = m P̄", worst(&|r| r.r1a)),
            ("conj_z_dot_tangential_gradient", "⟨z̄, ∇_0^z P⟩ = (r/2)(m−n) P̄", worst(&|r| r.r1b)),
            ("conj_zeta_dot_tangential_gradient", "⟨ζ̄, ∇_0^z P⟩ in terms of ∇_0^x, ∇_0^y", worst(&|r| r.r1c)),
            ("gradient_inner_product", "⟨∇^z P, ∇^z Q⟩ expansion", worst(&|r| r.r2)),
            ("tangential_inner_product", "pointwise ⟨∇_0^z P, ∇_0^z Q⟩ expansion on the sphere", worst(&|r| r.r3)),
            ("integration_by_parts", "sphere integration by parts with factor 2d−1", worst(&|r| r.r4)),
            ("dirichlet_eigenvalue", "∫⟨∇_0^z P, ∇_0^z Q⟩ = λ_d(m,n) ⟨P, Q⟩ with λ = ¼((m+n)² + 4(d−1)m)", worst(&|r| r.r5_true)),
        ];
        for (name, anchor, res) in items {
            c.identity(format!("{name}_d{d}"), anchor, res, 1e-8);
        }
        c.observe(
            format!("dirichlet_eigenvalue_alternate_form_d{d}"),
            "λ_d(m,n) = ¼((m+n)² + (4d−3)m − n)",
            worst(&|r| r.r5_alternate),
            "largest |∫⟨∇_0^z P, ∇_0^z Q⟩ − λ⟨P, Q⟩| with this λ; nonzero whenever m ≠ n",
        );
    }
    Ok(())
}
