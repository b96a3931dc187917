use lca_core::confmap::{ad, dl_map};
use lca_core::derivspaces::{holds, inner_space, solve_space, space_contains, EquationKind as K};
use lca_core::dsl::parse;
use lca_core::{
    ConformalAlgebra, ConformalMap, LieAlgebra, ModElement, Poly, Rational, Scalar, Var,
};
use num_rational::Ratio;

fn p(v: Var) -> Poly {
    Poly::var(v)
}

fn int(n: i64) -> Poly {
    Poly::int(n)
}

#[test]
fn virasoro_brackets_by_hand() {
    let vir = ConformalAlgebra::vir();
    let l = vir.generator(0);
    let dl = l.scal_mul(&p(Var::D));
    let (d, lam) = (p(Var::D), p(Var::Lam));
    let base = &d + &lam.scale(&Rational::from_i64(2));
    // [∂L λ L] = -λ [L λ L]
    assert_eq!(
        vir.bracket_at(&dl, &l, &lam),
        l.scal_mul(&(-(&lam * &base)))
    );
    // [L λ ∂L] = (∂ + λ) [L λ L]
    assert_eq!(
        vir.bracket_at(&l, &dl, &lam),
        l.scal_mul(&(&(&d + &lam) * &base))
    );
}

#[test]
fn source_text_matches_constructors() {
    let src = "confalg V {\n generators L;\n bracket [L ~ L] = (D + 2*lam) L;\n}\n\
               liealg g {\n basis e, f, h;\n [e, f] = h;\n [h, e] = 2 e;\n [h, f] = -2 f;\n}\n\
               confalg C = cur(g);\n";
    let file = parse(src).unwrap();
    assert_eq!(file.conf_algebra("V").unwrap(), &ConformalAlgebra::vir());
    let c = file.conf_algebra("C").unwrap();
    assert_eq!(c.table(), ConformalAlgebra::cur(&LieAlgebra::sl2()).table());
    assert_eq!(
        solve_space(c, K::CDer, 1, 1).dimension(),
        solve_space(&ConformalAlgebra::cur(&LieAlgebra::sl2()), K::CDer, 1, 1).dimension()
    );
}

#[test]
fn small_rationals_agree_with_big_ones() {
    let vir64 = lca_core::confalgebra::ConformalAlgebra::<Ratio<i64>>::vir();
    let vir = ConformalAlgebra::vir();
    for k in [K::CDer, K::CTDer, K::TC, K::GCTDer] {
        assert_eq!(
            solve_space(&vir64, k, 2, 2).dimension(),
            solve_space(&vir, k, 2, 2).dimension(),
            "{k}"
        );
    }
    let c64 = lca_core::confalgebra::ConformalAlgebra::cur(&lca_core::liealgebra::LieAlgebra::<
        Ratio<i64>,
    >::sl2());
    assert_eq!(solve_space(&c64, K::TC, 1, 2).dimension(), 3);
}

#[test]
fn w_algebras_satisfy_the_axioms() {
    // [L λ L] = (∂ + 2λ) L, [L λ W] = (∂ + bλ) W, [W λ W] = 0
    for b in [-1, 0, 1, 2, 3] {
        let d = p(Var::D);
        let lam = p(Var::Lam);
        let ll = ModElement::new(vec![&d + &lam.scale(&Rational::from_i64(2)), Poly::zero()]);
        let lw = ModElement::new(vec![Poly::zero(), &d + &lam.scale(&Rational::from_i64(b))]);
        // skew-symmetry fixes [W λ L] = ((b - 1)∂ + bλ) W
        let wl = ModElement::new(vec![
            Poly::zero(),
            &d.scale(&Rational::from_i64(b - 1)) + &lam.scale(&Rational::from_i64(b)),
        ]);
        let w = ConformalAlgebra::new(
            vec!["L".into(), "W".into()],
            vec![vec![ll, lw], vec![wl, ModElement::zero(2)]],
        )
        .unwrap();
        assert!(w.check_skew().is_ok(), "b = {b}");
        assert!(w.check_jacobi().is_ok(), "b = {b}");
        // ad of each generator is a derivation and lies in the inner space
        let inner = inner_space(&w, 2);
        for i in 0..2 {
            let a = ad(&w, &w.generator(i)).unwrap();
            assert!(holds(&w, &a, K::CDer, None));
            assert!(space_contains(&inner, &a));
        }
    }
}

#[test]
fn derivations_of_current_algebras() {
    let c = ConformalAlgebra::cur(&LieAlgebra::sl2());
    let dl = dl_map(&c).unwrap();
    // ∂ + x on every generator, written out by hand
    let by_hand = ConformalMap::scalar(3, &p(Var::D) + &p(Var::X));
    assert_eq!(dl, by_hand);
    assert!(holds(&c, &dl, K::CDer, None));
    assert!(holds(&c, &dl.scal_mul(&p(Var::X)), K::CDer, None));
    // the identity scaled by x^2 is a centroid but not a derivation
    let x2 = ConformalMap::scalar(3, p(Var::X).pow(2));
    assert!(holds(&c, &x2, K::TC, None));
    assert!(!holds(&c, &x2, K::CDer, None));
    assert!(!holds(&c, &ConformalMap::scalar(3, int(1)), K::CTDer, None));
}
