use hermite_riesz::operators::{BandLimitedFunction, Basis, ModeLabel, OperatorRoute};
use hermite_riesz::sphere_calculus::{circle_identity, five_term, semigroup_projection, special_f_coeffs, AngularForm};
use hermite_riesz::Result;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{worse, Collector};

const RADII: [f64; 4] = [0.3, 0.8, 1.4, 2.0];
const ANCHOR: &str = "Σ_j ∫ |S_j f(rζ)|² + |S̄_j f(rζ)|² dσ(ζ) = A_1² + A_2² + A_3² + A_4² + A_5";

fn random(modes: &[ModeLabel], d: usize, rng: &mut ChaCha8Rng) -> Result<BandLimitedFunction> {
    BandLimitedFunction::from_coeffs(
        Basis::SpecialHermite { d },
        modes.iter().map(|l| (l.clone(), Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))),
    )
}

fn bidegree(l: &ModeLabel) -> (u32, u32, u32) {
    match *l {
        ModeLabel::Special { k, m, n, .. } => (k, m, n),
        _ => (0, 0, 0),
    }
}

pub(super) fn run(c: &mut Collector<'_>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.cfg.seed);
    for d in c.dims(&[1]) {
        let modes: Vec<ModeLabel> = Basis::SpecialHermite { d }
            .modes(5)?
            .into_iter()
            .filter(|l| {
                let (k, m, n) = bidegree(l);
                m + n <= 3 && k <= 2
            })
            .collect();
        let holo: Vec<ModeLabel> = modes.iter().filter(|l| bidegree(l).1 >= bidegree(l).2).cloned().collect();
        let anti: Vec<ModeLabel> = modes.iter().filter(|l| bidegree(l).1 < bidegree(l).2).cloned().collect();

        let mut res = 0.0f64;
        let mut profile = 0.0f64;
        let mut inputs: Vec<BandLimitedFunction> =
            modes.iter().map(|l| BandLimitedFunction::mode(Basis::SpecialHermite { d }, l.clone())).collect::<Result<_>>()?;
        for _ in 0..8 {
            inputs.push(random(&modes, d, &mut rng)?);
        }
        for f in &inputs {
            let rep = five_term(f, &RADII, OperatorRoute::Spectral)?;
            res = worse(res, rep.residual);
            profile = worse(profile, rep.profile_residual);
        }
        c.identity(format!("decomposition_d{d}"), ANCHOR, res, 1e-7);
        c.identity(format!("profile_derivatives_d{d}"), "analytic radial profiles of L^{-1/2}f match sphere projections", profile, 1e-7);

        let mut neg = 0.0f64;
        for _ in 0..16 {
            let rep = five_term(&random(&holo, d, &mut rng)?, &RADII, OperatorRoute::Spectral)?;
            let scale = rep.lhs.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            neg = rep.a5.iter().map(|v| (-v).max(0.0) / scale).fold(neg, worse);
        }
        c.fixed(format!("a5_nonnegative_holomorphic_d{d}"), "A_5 ≥ 0 when f has no (m, n) components with m < n", neg, 1e-12);
        let mut low = f64::INFINITY;
        for _ in 0..16 {
            let rep = five_term(&random(&anti, d, &mut rng)?, &RADII, OperatorRoute::Spectral)?;
            let scale = rep.lhs.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            low = rep.a5.iter().map(|v| v / scale).fold(low, f64::min);
        }
        c.observe(
            format!("a5_min_antiholomorphic_d{d}"),
            "sign of A_5 on components with m < n",
            low,
            "smallest A_5 / max LHS over random inputs with m < n only",
        );

        let mixed = random(&modes, d, &mut rng)?;
        c.identity(
            format!("half_inverse_profiles_d{d}"),
            "L^{-1/2}f profiles from the subordinated k_t^δ semigroup",
            special_f_coeffs(&mixed, &RADII)?.residual,
            1e-8,
        );
        let mut twist = 0.0f64;
        for t in [0.1, 0.7] {
            twist = worse(twist, semigroup_projection(&mixed, t, &RADII, true)?.residual);
        }
        c.identity(format!("semigroup_projection_d{d}"), "e^{-tL} acts on (m, n) profiles through k_t^δ", twist, 1e-9);
    }

    let dir = [Complex64::from_polar(1.0, 0.7)];
    let mut harmonic = 0.0f64;
    let mut conjugate = 0.0f64;
    for (r, s, t) in [(0.5, 1.2, 0.3), (1.5, 0.7, 1.0), (2.0, 2.0, 0.2)] {
        let (l, rr) = circle_identity((1, 1, 0, 1), r, s, t, &dir, AngularForm::Harmonic)?;
        harmonic = worse(harmonic, (l - rr).norm() / (1.0 + rr.norm()));
        let (l, rr) = circle_identity((1, 1, 0, 1), r, s, t, &dir, AngularForm::Conjugate)?;
        conjugate = worse(conjugate, (l - rr).norm() / (1.0 + rr.norm()));
    }
    c.identity("sphere_average_harmonic_form_d1", "sphere average of the twisted heat kernel against Y(w′)", harmonic, 1e-7);
    c.observe(
        "sphere_average_conjugate_form_d1",
        "sphere average written with conj(Y(w′))",
        conjugate,
        "deviation for (m, n) = (1, 0); vanishes only when m = n",
    );

    let f = BandLimitedFunction::from_coeffs(
        Basis::SpecialHermite { d: 1 },
        [(ModeLabel::Special { k: 1, m: 1, n: 0, j: 1 }, Complex64::new(1.0, 0.0)), (ModeLabel::Special { k: 0, m: 0, n: 2, j: 1 }, Complex64::new(0.3, 0.2))],
    )?;
    let rep = five_term(&f, &[0.5, 1.5], OperatorRoute::TwistedConvolution)?;
    c.identity("decomposition_twisted_route_d1", ANCHOR, rep.residual, 1e-7);
    Ok(())
}
