use g2_cubic::enumeration::Region;
use g2_cubic::finite::{act_mod, discriminant_mod, gl2_mod, pairing_mod, FiniteModelFunction, Scalar};
use g2_cubic::forms::reduce::canonical_int;
use g2_cubic::forms::{self, BinaryCubicForm, GL2Elt, IntForm, IntMat, Q};
use g2_cubic::g2::truncation_residual;
use g2_cubic::zeta::local::{sigma1_closed, sigma1_factor};
use g2_cubic::zeta::{residues, FunctionalBundle};
use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q() -> impl Strategy<Value = Q> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| Q::new(BigInt::from(n), BigInt::from(d)))
}

fn form() -> impl Strategy<Value = BinaryCubicForm> {
    prop::array::uniform4(q()).prop_map(BinaryCubicForm::new)
}

fn gl2() -> impl Strategy<Value = GL2Elt> {
    prop::array::uniform4(q()).prop_filter_map("singular", |e| GL2Elt::new([[e[0].clone(), e[1].clone()], [e[2].clone(), e[3].clone()]]).ok())
}

fn unimodular() -> impl Strategy<Value = IntMat> {
    prop::collection::vec(0usize..4, 0..12).prop_map(|w| {
        let g = [IntMat::S, IntMat::translation(1), IntMat::translation(-1), IntMat([[1, 0], [0, -1]])];
        w.into_iter().fold(IntMat::IDENTITY, |m, i| m.mul(&g[i]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn action_is_a_right_action(f in form(), l in gl2(), m in gl2()) {
        prop_assert_eq!(forms::act(&forms::act(&f, &l), &m), forms::act(&f, &l.mul(&m)));
    }

    #[test]
    fn orbit_type_is_invariant(f in form(), l in gl2()) {
        prop_assert_eq!(forms::classify_orbit(&f), forms::classify_orbit(&forms::act(&f, &l)));
    }

    #[test]
    fn discriminant_covariance(f in form(), l in gl2()) {
        let d = l.det();
        prop_assert_eq!(forms::discriminant(&forms::act(&f, &l)) * &d * &d, forms::discriminant(&f));
    }

    #[test]
    fn pairing_is_alternating_and_invariant(x in form(), y in form(), l in gl2()) {
        prop_assert_eq!(forms::pairing(&x, &y), -forms::pairing(&y, &x));
        let li = forms::iota(&l);
        prop_assert_eq!(forms::pairing(&forms::act(&x, &l), &forms::act(&y, &li)), forms::pairing(&x, &y));
    }

    #[test]
    fn canonical_form_is_a_class_invariant(c in prop::array::uniform4(-6i64..=6), m in unimodular()) {
        let f = IntForm(c);
        prop_assume!(f.disc() != 0);
        let (a, _) = canonical_int(&f, false).unwrap();
        let (b, _) = canonical_int(&f.act(&m), false).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(a.disc(), f.disc());
        prop_assert!(Region::new(f.disc().unsigned_abs() as u64).contains(&a));
    }

    #[test]
    fn truncation_residual_is_additive(a in 1e-3f64..1e3, b in 1e-3f64..1e3, t in -4f64..4.0) {
        // ∫ over (a, e^T) splits at b
        let lhs = truncation_residual(a, t);
        let rhs = truncation_residual(a, b.ln()) + truncation_residual(b, t);
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn sigma1_partial_sums_increase(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), s in 0.2f64..4.0, k in 1u32..30) {
        let a = sigma1_factor(p, s, k).unwrap();
        let b = sigma1_factor(p, s, k + 1).unwrap();
        prop_assert!(a <= b && b <= sigma1_closed(p, s) * (1.0 + 1e-12));
    }

    #[test]
    fn residues_are_linear_in_the_data(seed in any::<u64>(), t in -3f64..3.0) {
        let b = FunctionalBundle::random(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut scaled = b.clone();
        for v in [&mut scaled.phi0, &mut scaled.phihat0, &mut scaled.sigma1_phi, &mut scaled.sigma1_phihat, &mut scaled.dbl_phi, &mut scaled.dbl_phihat] {
            *v *= t;
        }
        for (r, s) in residues(&b).iter().zip(residues(&scaled)) {
            prop_assert!((r.value * t - s.value).abs() <= 1e-12 * (1.0 + r.value.abs()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn finite_pairing_and_discriminant_covariance(x in prop::array::uniform4(0u64..7), y in prop::array::uniform4(0u64..7), i in 0usize..2016) {
        let n = 7;
        let group = gl2_mod(n, false);
        let l = group[i % group.len()];
        let d = (l[0][0] * l[1][1] + n * n - l[0][1] * l[1][0] % n) % n;
        let xl = act_mod(&x, &l, n).unwrap();
        // P(x·l) = det^{-2} P(x)
        prop_assert_eq!(discriminant_mod(&xl, n) * d % n * d % n, discriminant_mod(&x, n));
        let dinv = (1..n).find(|t| t * d % n == 1).unwrap();
        let li = [[l[0][0] * dinv % n, l[0][1] * dinv % n], [l[1][0] * dinv % n, l[1][1] * dinv % n]];
        prop_assert_eq!(pairing_mod(&xl, &act_mod(&y, &li, n).unwrap(), n), pairing_mod(&x, &y, n));
    }

    #[test]
    fn finite_fourier_is_linear(seed in any::<u64>(), c in -2.0f64..2.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FiniteModelFunction::<Complex64>::random(5, &mut rng).unwrap();
        let g = FiniteModelFunction::<Complex64>::random(5, &mut rng).unwrap();
        let h = FiniteModelFunction::from_values(5, f.values().iter().zip(g.values()).map(|(a, b)| a * c + b).collect()).unwrap();
        let (fh, gh, hh) = (f.fourier(), g.fourier(), h.fourier());
        for i in 0..hh.values().len() {
            let want = fh.values()[i] * c + gh.values()[i];
            prop_assert!(hh.values()[i].distance(&want) < 1e-12);
        }
    }
}
