//! Jacobson radical.
//!
//! In characteristic 0 or `p > dim A` the radical is the kernel of the trace
//! form `(x, y) ↦ tr(L_x L_y)`. For small `p` we use the generalized trace
//! functionals `g_i(z) = (Tr(L̃_z^{p^i}) mod p^{i+1}) / p^i` of an integer
//! lift `L̃_z`, filtering `A ⊇ I_0 ⊇ … ⊇ I_l = rad A` with `p^l ≤ dim A`.

use crate::algebra::{largest_ideal_in, Algebra, Ideal, Table};
use crate::field::{Field, Scalar};
use crate::linalg::{combine_vecs, nullspace, Mat, Subspace, Vector};

pub fn radical(a: &Algebra) -> Ideal {
    let f = a.field();
    let p = f.characteristic() as usize;
    let raw = if p == 0 || p > a.dim() {
        trace_form_kernel(a)
    } else {
        match f {
            Field::Prime(_) => small_char_radical(a).space,
            Field::Ext(_) => {
                let (res, to_ext) = restrict_scalars(a);
                let r = small_char_radical(&res);
                let vecs: Vec<Vector> = r.space.basis().iter().map(&to_ext).collect();
                Subspace::span(f, a.dim(), &vecs)
            }
            Field::Rationals => unreachable!(),
        }
    };
    // the constructions above already give ideals; shrinking is a no-op
    // safeguard that keeps the invariant local to this function
    largest_ideal_in(a, &raw)
}

pub fn is_semisimple(a: &Algebra) -> bool {
    radical(a).dim() == 0
}

fn trace_form_kernel(a: &Algebra) -> Subspace {
    let f = a.field();
    let n = a.dim();
    let ops = a.left_ops();
    let mut g = Mat::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            // tr(L_i L_j) = Σ_{k,l} L_i[k][l] L_j[l][k]
            let mut t = f.zero();
            for k in 0..n {
                for l in 0..n {
                    let x = ops[i].get(k, l);
                    if !f.is_zero(x) {
                        t = f.mul_add(&t, x, ops[j].get(l, k));
                    }
                }
            }
            g.set(i, j, t);
        }
    }
    Subspace::span(f, n, &nullspace(f, &g))
}

fn small_char_radical(a: &Algebra) -> Ideal {
    let f = a.field();
    let p = f.characteristic() as u128;
    let n = a.dim();
    let mut cur = Subspace::full(f, n);
    let mut pi: u128 = 1; // p^i
    loop {
        let basis = cur.basis().to_vec();
        if basis.is_empty() {
            break;
        }
        let modulus = pi * p;
        let mut rows: Vec<Vector> = Vec::new();
        for j in 0..n {
            let e = a.basis_vec(j);
            let row: Vector = basis
                .iter()
                .map(|b| {
                    let z = a.mul(b, &e);
                    let m = lift_matrix(&a.left_mul_matrix(&z));
                    let t = trace_of_power(&m, pi, modulus);
                    f.from_int(((t / pi) % p) as i64)
                })
                .collect();
            rows.push(row);
        }
        let ker = nullspace(f, &Mat::from_rows(basis.len(), &rows));
        let next: Vec<Vector> = ker.iter().map(|c| combine_vecs(f, c, &basis, n)).collect();
        cur = Subspace::span(f, n, &next);
        if pi * p > n as u128 {
            break;
        }
        pi *= p;
    }
    Ideal { space: cur }
}

fn lift_matrix(m: &Mat) -> Vec<Vec<u128>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| match x {
                    Scalar::Fp(v) => *v as u128,
                    _ => unreachable!("prime field expected"),
                })
                .collect()
        })
        .collect()
}

fn mat_mul_mod(a: &[Vec<u128>], b: &[Vec<u128>], m: u128) -> Vec<Vec<u128>> {
    let n = a.len();
    let mut c = vec![vec![0u128; n]; n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i][j] = (c[i][j] + x * b[k][j]) % m;
            }
        }
    }
    c
}

fn trace_of_power(m: &[Vec<u128>], mut e: u128, modulus: u128) -> u128 {
    let n = m.len();
    let mut acc: Vec<Vec<u128>> = (0..n).map(|i| (0..n).map(|j| u128::from(i == j)).collect()).collect();
    let mut base: Vec<Vec<u128>> = m.iter().map(|r| r.iter().map(|x| x % modulus).collect()).collect();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul_mod(&acc, &base, modulus);
        }
        base = mat_mul_mod(&base, &base, modulus);
        e >>= 1;
    }
    (0..n).fold(0, |t, i| (t + acc[i][i]) % modulus)
}

/// `A` viewed as an algebra over the prime field, with basis
/// `α^a e_i` at index `i*k + a`, and the map back to `A`'s coordinates.
pub(crate) fn restrict_scalars(a: &Algebra) -> (Algebra, impl Fn(&Vector) -> Vector + '_) {
    let f = a.field();
    let k = f.degree();
    let p = f.characteristic();
    let fp = Field::prime(p).expect("characteristic is prime");
    let n = a.dim();
    let alpha_pow = |e: usize| -> Scalar {
        if k == 1 {
            return f.one();
        }
        let mut c = vec![0u32; k];
        c[1] = 1;
        f.pow(&f.from_prime_coords(&c), e as u64)
    };
    let d = n * k;
    let mut t = Table::zeros(&fp, d);
    for i in 0..n {
        for j in 0..n {
            let prod = a.product_basis(i, j);
            for x in 0..k {
                for y in 0..k {
                    let s = alpha_pow(x + y);
                    for (l, c) in prod.iter().enumerate() {
                        if f.is_zero(c) {
                            continue;
                        }
                        let coords = f.prime_coords(&f.mul(&s, c)).expect("finite field");
                        for (b, v) in coords.iter().enumerate() {
                            if *v != 0 {
                                t.set(i * k + x, j * k + y, l * k + b, fp.from_int(*v as i64));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![fp.zero(); d];
    for (l, c) in a.unit().iter().enumerate() {
        for (b, v) in f.prime_coords(c).expect("finite field").iter().enumerate() {
            unit[l * k + b] = fp.from_int(*v as i64);
        }
    }
    let res = Algebra::from_table_unchecked(fp, t, unit, None).expect("restriction of a valid algebra");
    let back = move |v: &Vector| -> Vector {
        (0..n)
            .map(|l| {
                let c: Vec<u32> = (0..k)
                    .map(|b| match &v[l * k + b] {
                        Scalar::Fp(x) => *x,
                        _ => unreachable!(),
                    })
                    .collect();
                f.from_prime_coords(&c)
            })
            .collect()
    };
    (res, back)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        direct_sum, group_algebra, matrix_algebra, quotient, tensor_over_field, upper_triangular,
    };
    use crate::group::CayleyTable;

    /// Over F_2: rad A = {x : xy is nilpotent for all y}.
    fn brute_radical_dim(a: &Algebra) -> usize {
        let f = a.field();
        let n = a.dim();
        let q = f.order().unwrap();
        let total = q.pow(n as u32);
        let elem = |mut idx: u64| -> Vector {
            (0..n)
                .map(|_| {
                    let d = idx % q;
                    idx /= q;
                    f.element(d)
                })
                .collect()
        };
        let all: Vec<Vector> = (0..total).map(elem).collect();
        let count = all
            .iter()
            .filter(|x| all.iter().all(|y| a.is_nilpotent_element(&a.mul(x, y))))
            .count() as u64;
        let mut d = 0;
        while q.pow(d) < count {
            d += 1;
        }
        d as usize
    }

    #[test]
    fn semisimple_matrix_algebras() {
        for f in [Field::Rationals, Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            for n in 1..=3 {
                assert!(is_semisimple(&matrix_algebra(&f, n)), "M_{n} over {f}");
            }
        }
    }

    #[test]
    fn triangular_radical() {
        let q = Field::Rationals;
        let t = upper_triangular(&q, 2);
        let r = radical(&t);
        assert_eq!(r.dim(), 1);
        assert!(r.space.contains(&q, &t.basis_vec(1)));
        let t3 = upper_triangular(&Field::prime(2).unwrap(), 3);
        assert_eq!(radical(&t3).dim(), 3);
    }

    #[test]
    fn group_algebras_modular_and_not() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        let c2 = CayleyTable::cyclic(2);
        assert!(!is_semisimple(&group_algebra(&f2, &c2)));
        assert!(is_semisimple(&group_algebra(&f3, &c2)));
        let s3 = CayleyTable::symmetric3();
        assert_eq!(radical(&group_algebra(&Field::prime(5).unwrap(), &s3)).dim(), 0);
        // F_2[S_3] ≅ F_2[C_2]-ish block ⊕ M_2(F_2): radical dimension 1
        assert_eq!(radical(&group_algebra(&f2, &s3)).dim(), 1);
        // F_3[S_3]: radical dimension 4
        assert_eq!(radical(&group_algebra(&f3, &s3)).dim(), 4);
        assert_eq!(radical(&group_algebra(&f2, &CayleyTable::cyclic(4))).dim(), 3);
    }

    #[test]
    fn extension_field_radical() {
        let f4 = Field::extension_default(2, 2).unwrap();
        let g = group_algebra(&f4, &CayleyTable::cyclic(2));
        assert_eq!(radical(&g).dim(), 1);
        assert!(is_semisimple(&matrix_algebra(&f4, 2)));
        assert_eq!(radical(&upper_triangular(&f4, 2)).dim(), 1);
    }

    #[test]
    fn radical_nilpotent_and_quotient_semisimple() {
        let f2 = Field::prime(2).unwrap();
        let algebras = vec![
            upper_triangular(&f2, 3),
            group_algebra(&f2, &CayleyTable::symmetric3()),
            tensor_over_field(&group_algebra(&f2, &CayleyTable::cyclic(2)), &upper_triangular(&f2, 2)).unwrap(),
            direct_sum(&matrix_algebra(&f2, 2), &group_algebra(&f2, &CayleyTable::cyclic(3))).unwrap(),
        ];
        for a in &algebras {
            let r = radical(a);
            assert!(r.is_nilpotent(a));
            if r.dim() < a.dim() {
                let (q, _) = quotient(a, &r).unwrap();
                q.validate().unwrap();
                assert!(is_semisimple(&q));
            }
        }
    }

    #[test]
    fn matches_brute_force_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let algebras = vec![
            upper_triangular(&f2, 2),
            group_algebra(&f2, &CayleyTable::cyclic(2)),
            group_algebra(&f2, &CayleyTable::cyclic(3)),
            group_algebra(&f2, &CayleyTable::cyclic(4)),
            matrix_algebra(&f2, 2),
            direct_sum(&upper_triangular(&f2, 2), &group_algebra(&f2, &CayleyTable::cyclic(2))).unwrap(),
        ];
        for a in &algebras {
            assert_eq!(radical(a).dim(), brute_radical_dim(a), "{a}");
        }
    }
}
