use std::sync::Arc;

use bisep::algebra::polynomial_quotient;
use bisep::deciders::{Config, ExtContext, Verdict};
use bisep::io::Object;
use bisep::linalg::{nullspace, rank, Mat};
use bisep::modlin::Extension;
use bisep::radical::is_semisimple;
use bisep::Field;
use proptest::prelude::*;

/// Polynomials over F_2 as bit masks, bit i = coefficient of x^i.
fn deg(a: u32) -> i32 {
    31 - a.leading_zeros() as i32
}

fn poly_mod(mut a: u32, b: u32) -> u32 {
    while a != 0 && deg(a) >= deg(b) {
        a ^= b << (deg(a) - deg(b));
    }
    a
}

fn poly_gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        poly_gcd(b, poly_mod(a, b))
    }
}

fn derivative(a: u32) -> u32 {
    // odd-degree terms survive, shifted down
    (a >> 1) & 0x5555_5555
}

fn quotient_f2(mask: u32) -> Arc<bisep::algebra::Algebra> {
    let f = Field::prime(2).unwrap();
    let coeffs: Vec<_> = (0..=deg(mask)).map(|i| f.from_int(i64::from(mask >> i & 1))).collect();
    Arc::new(polynomial_quotient(&f, &coeffs).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // F_2[x]/(g) is separable over F_2 exactly when g is squarefree
    #[test]
    fn polynomial_quotients_separable_iff_squarefree(low in 0u32..32, d in 1i32..=5) {
        let g = (1 << d) | (low & ((1 << d) - 1));
        let ctx = ExtContext::new(Extension::over_base_field(quotient_f2(g)), Config { budget: 100_000 });
        let squarefree = poly_gcd(g, derivative(g)) == 1;
        prop_assert_eq!(ctx.separable().verdict, Verdict::from_bool(squarefree));
        prop_assert_eq!(is_semisimple(ctx.extension().r()), squarefree);
        // commutative quotients of k[x] are Frobenius algebras
        prop_assert_eq!(ctx.frobenius().verdict, Verdict::True);
        prop_assert_eq!(ctx.split().verdict, Verdict::True);
    }

    #[test]
    fn rank_nullity(rows in 1usize..6, cols in 1usize..6, seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let f = Field::prime(p).unwrap();
        let vals: Vec<i64> = (0..rows * cols).map(|i| ((seed >> (i % 60)) ^ (i as u64 * 0x9E37)) as i64 % 11).collect();
        let m = Mat::from_ints(&f, rows, cols, &vals);
        let ker = nullspace(&f, &m);
        prop_assert_eq!(rank(&f, &m) + ker.len(), cols);
        for v in &ker {
            prop_assert!(m.mul_vec(&f, v).iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn field_arithmetic(a in 0u64..16, b in 0u64..16, c in 0u64..16) {
        let f = Field::extension_default(2, 4).unwrap();
        let (a, b, c) = (f.element(a), f.element(b), f.element(c));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
        prop_assert_eq!(f.pow(&a, 16), a);
    }

    #[test]
    fn extension_json_round_trip(low in 0u32..16, d in 2i32..=4) {
        let g = (1 << d) | (low & ((1 << d) - 1));
        let obj = Object::Extension(Extension::over_base_field(quotient_f2(g)));
        let text = obj.to_json().to_string();
        let back = Object::from_str(&text).unwrap();
        prop_assert_eq!(back.to_json(), obj.to_json());
    }
}
