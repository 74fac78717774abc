use niven_core::bigmath::ten_to_minus;
use niven_core::legendre::{
    cbs_bound, coefficient_enclosure, inner_product, legendre_sum_formula, rodrigues_shifted,
    shifted_legendre, LegendreBasis,
};
use niven_core::poly::RatPoly;
use niven_core::{Integer, Rational};

fn radii() -> Vec<Rational> {
    vec![
        Rational::from(1),
        Rational::from(2),
        Rational::from(5),
        Rational::from((7, 2)),
    ]
}

#[test]
fn three_constructions_agree() {
    for r in radii() {
        for n in 0..=10usize {
            let via_sum =
                legendre_sum_formula(n).affine_substitute(&(2 / r.clone()), &Rational::from(-1));
            let direct = shifted_legendre(n, &r).unwrap();
            assert_eq!(via_sum, direct, "n = {n}, r = {r}");
            assert_eq!(
                rodrigues_shifted(n, &r).unwrap(),
                direct,
                "n = {n}, r = {r}"
            );
        }
    }
}

#[test]
fn orthogonality_norm_and_annihilation() {
    for r in radii() {
        let basis: Vec<LegendreBasis> = (0..=8)
            .map(|n| LegendreBasis::new(n, r.clone()).unwrap())
            .collect();
        for (n, p) in basis.iter().enumerate() {
            for m in &basis[..n] {
                assert_eq!(inner_product(m.poly(), p.poly(), &r).unwrap(), 0);
            }
            for k in 0..n {
                let xk = RatPoly::monomial(Rational::from(1), k);
                assert_eq!(inner_product(p.poly(), &xk, &r).unwrap(), 0);
            }
            let norm = inner_product(p.poly(), p.poly(), &r).unwrap();
            assert_eq!(norm, Rational::from(&r / Integer::from(2 * n + 1)));
            assert_eq!(norm, p.squared_norm());
        }
    }
}

#[test]
fn parity() {
    for n in 0..=12usize {
        let p = legendre_sum_formula(n);
        let flipped = p.affine_substitute(&Rational::from(-1), &Rational::new());
        let expected = if n % 2 == 0 { p.clone() } else { -&p };
        assert_eq!(flipped, expected);
    }
}

#[test]
fn coefficients_are_dominated_by_the_bound() {
    let eps = ten_to_minus(30);
    for r in 1..=2i64 {
        for q in 1..=10i64 {
            let (ri, qi) = (Integer::from(r), Integer::from(q));
            for n in (2 * r as usize - 1)..=12 {
                let c = coefficient_enclosure(n, &ri, &qi, &eps).unwrap();
                let bound = cbs_bound(n, &ri, &qi).unwrap();
                assert!(
                    c.magnitude() <= Rational::from(&bound + &eps),
                    "n = {n}, r = {r}, q = {q}"
                );
            }
        }
    }
}

#[test]
fn bound_requires_large_enough_n() {
    assert!(cbs_bound(2, &Integer::from(2), &Integer::from(1)).is_err());
    assert!(cbs_bound(3, &Integer::from(2), &Integer::from(1)).is_ok());
}
