//! Twisted Frobenius checks: `R ≅ β(R*)` as `(S,R)`-bimodules for a given
//! automorphism `β` of `S`, automorphism enumeration over small fields, and
//! whether `β` extends to an inner automorphism of `R`.

use super::extension::ExtContext;
use super::invertible::{find_invertible, InvSearch};
use super::{all_elements, checked_pow, CertificateKind, Decision};
use crate::algebra::{check_homomorphism, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{inverse, nullspace, Mat, Vector};
use crate::modlin::{hom_space, Extension, Side};

pub fn validate_automorphism(s: &Algebra, beta: &Mat) -> Result<()> {
    check_homomorphism(s, s, beta).map_err(|e| Error::NotAutomorphism(e.to_string()))?;
    if inverse(s.field(), beta).is_none() {
        return Err(Error::NotAutomorphism("map is not bijective".into()));
    }
    Ok(())
}

/// All automorphisms of `S` over a finite field, by scanning every matrix
/// in canonical order (entries row-major, first entry least significant).
pub fn enumerate_automorphisms(s: &Algebra, budget: u64) -> Result<Vec<Mat>> {
    let f = s.field();
    let n = s.dim();
    let pts = all_elements(f).ok_or_else(|| Error::BadParams("automorphism enumeration needs a finite field".into()))?;
    let total = checked_pow(pts.len() as u64, n * n).filter(|&t| t <= budget).ok_or(Error::BudgetExceeded(budget))?;
    let q = pts.len() as u64;
    let mut out = Vec::new();
    for idx in 0..total {
        let mut i = idx;
        let data: Vector = (0..n * n)
            .map(|_| {
                let x = pts[(i % q) as usize].clone();
                i /= q;
                x
            })
            .collect();
        let m = Mat::from_vec(n, n, data);
        if m.mul_vec(f, s.unit()) == *s.unit() && validate_automorphism(s, &m).is_ok() {
            out.push(m);
        }
    }
    Ok(out)
}

/// Is `R ≅ R*` as `(S,R)`-bimodules once the left `S`-action on `R*` is
/// twisted by `β`? Requires `R_S` f.g. projective; the witness is the
/// isomorphism `R → β(R*)`.
pub fn twisted_frobenius(ctx: &ExtContext, beta: &Mat) -> Result<Decision<Mat>> {
    let ext = ctx.extension();
    validate_automorphism(ext.s(), beta)?;
    if ctx.fgp_right().is_false() {
        return Ok(Decision::no_because(CertificateKind::LinearInfeasible, "R_S is not finitely generated projective"));
    }
    let twisted = ctx.right_dual().module.twist_left(beta);
    let srr = ctx.natural(crate::modlin::Pattern::SRR);
    let hs = hom_space(&srr, &twisted, Side::Both)?;
    let budget = ctx.config().budget;
    Ok(match find_invertible(ext.field(), &hs.basis, srr.dim(), twisted.dim(), budget) {
        InvSearch::Found { map, .. } => Decision::yes(map),
        InvSearch::NoneExists => Decision::no(CertificateKind::NoInvertibleElement),
        InvSearch::Unknown { budget } => Decision::unknown(budget),
    })
}

/// A unit `u ∈ R` with `u ι(s) = ι(β(s)) u` for all `s`, i.e. `β` is
/// conjugation by `u` restricted to `S`.
pub fn extended_inner(ext: &Extension, beta: &Mat, budget: u64) -> Result<Decision<Vector>> {
    validate_automorphism(ext.s(), beta)?;
    let (r, f) = (ext.r(), ext.field());
    let n = r.dim();
    // u ↦ u ι(s_j) − ι(β(s_j)) u is linear in u
    let mut rows: Vec<Vector> = Vec::new();
    for j in 0..ext.s().dim() {
        let right = r.right_mul_matrix(&ext.image_basis(j));
        let left = r.left_mul_matrix(&ext.image(&beta.col(j)));
        let d = right.sub(f, &left);
        rows.extend((0..n).map(|i| d.row(i).to_vec()));
    }
    let space = if rows.is_empty() {
        (0..n).map(|i| r.basis_vec(i)).collect()
    } else {
        nullspace(f, &Mat::from_rows(n, &rows))
    };
    let ops: Vec<Mat> = space.iter().map(|u| r.left_mul_matrix(u)).collect();
    Ok(match find_invertible(f, &ops, n, n, budget) {
        InvSearch::Found { coeffs, .. } => Decision::yes(crate::linalg::combine_vecs(f, &coeffs, &space, n)),
        InvSearch::NoneExists => Decision::no(CertificateKind::NoInvertibleElement),
        InvSearch::Unknown { budget } => Decision::unknown(budget),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{diagonal, upper_triangular};
    use crate::deciders::{Config, Verdict};
    use crate::field::Field;
    use crate::group::CayleyTable;
    use crate::modlin::group_extension;

    #[test]
    fn automorphisms_of_small_algebras() {
        let f2 = Field::prime(2).unwrap();
        // T_2(F_2): inner automorphisms by the two units 1 and 1 + e12
        assert_eq!(enumerate_automorphisms(&upper_triangular(&f2, 2), 1000).unwrap().len(), 2);
        // F_2 × F_2: identity and the swap
        assert_eq!(enumerate_automorphisms(&diagonal(&f2, 2), 1000).unwrap().len(), 2);
        assert!(matches!(enumerate_automorphisms(&upper_triangular(&f2, 2), 10), Err(Error::BudgetExceeded(10))));
    }

    #[test]
    fn rejects_non_automorphisms() {
        let f2 = Field::prime(2).unwrap();
        let t = upper_triangular(&f2, 2);
        assert!(matches!(validate_automorphism(&t, &Mat::zeros(&f2, 3, 3)), Err(Error::NotAutomorphism(_))));
    }

    #[test]
    fn identity_twist_matches_frobenius() {
        let f3 = Field::prime(3).unwrap();
        let ext = group_extension(&f3, &CayleyTable::symmetric3(), &[0, 3]).unwrap();
        let ctx = ExtContext::new(ext.clone(), Config { budget: 1_000_000 });
        let id = Mat::identity(&f3, 2);
        assert_eq!(twisted_frobenius(&ctx, &id).unwrap().verdict, ctx.frobenius().verdict);
        assert!(extended_inner(&ext, &id, 1000).unwrap().is_true());
    }

    #[test]
    fn triangular_over_diagonal_swap_is_not_inner() {
        let f2 = Field::prime(2).unwrap();
        let ext = Extension::new(
            Arc::new(diagonal(&f2, 2)),
            Arc::new(upper_triangular(&f2, 2)),
            Mat::from_ints(&f2, 3, 2, &[1, 0, 0, 0, 0, 1]),
        )
        .unwrap();
        let swap = Mat::from_ints(&f2, 2, 2, &[0, 1, 1, 0]);
        assert_eq!(extended_inner(&ext, &swap, 1000).unwrap().verdict, Verdict::False);
        let ctx = ExtContext::new(ext, Config { budget: 1_000_000 });
        for beta in enumerate_automorphisms(ctx.extension().s(), 1000).unwrap() {
            assert_eq!(twisted_frobenius(&ctx, &beta).unwrap().verdict, Verdict::False);
        }
    }
}
