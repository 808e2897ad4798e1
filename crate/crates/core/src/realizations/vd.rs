use super::{inv, q_pow, AwRealization, CentralCharacter, RealizationError, VdSpec};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// `x q^(2i-d) + x^-1 q^(d-2i)`.
fn theta<F: Field>(x: &F, q: &F, d: i64, i: i64) -> F {
    x.mul_ref(&q_pow(q, 2 * i - d)) + inv(x).mul_ref(&q_pow(q, d - 2 * i))
}

fn phi<F: Field>(spec: &VdSpec<F>, i: i64) -> F {
    let d = spec.d as i64;
    let q = &spec.q;
    let abc = spec.a.mul_ref(&spec.b).mul_ref(&spec.c);
    let abci = spec.a.mul_ref(&spec.b).mul_ref(&inv(&spec.c));
    let lead = inv(&spec.a.mul_ref(&spec.b)).mul_ref(&q_pow(q, d + 1));
    let f1 = q_pow(q, i) - q_pow(q, -i);
    let f2 = q_pow(q, i - d - 1) - q_pow(q, d - i + 1);
    let f3 = q_pow(q, -i) - abc.mul_ref(&q_pow(q, i - d - 1));
    let f4 = q_pow(q, -i) - abci.mul_ref(&q_pow(q, i - d - 1));
    lead.mul_ref(&f1).mul_ref(&f2).mul_ref(&f3).mul_ref(&f4)
}

/// The closed-form scalars by which `α, β, γ` act on `V_d(a, b, c)`.
pub fn vd_character<F: Field>(spec: &VdSpec<F>) -> CentralCharacter<F> {
    let q = &spec.q;
    let d = spec.d as i64;
    let s = |x: &F| x.clone() + &inv(x);
    let qd = q_pow(q, d + 1) + q_pow(q, -d - 1);
    let (sa, sb, sc) = (s(&spec.a), s(&spec.b), s(&spec.c));
    CentralCharacter {
        alpha: sb.mul_ref(&sc) + sa.mul_ref(&qd),
        beta: sc.mul_ref(&sa) + sb.mul_ref(&qd),
        gamma: sa.mul_ref(&sb) + sc.mul_ref(&qd),
    }
}

/// `A` lower bidiagonal with diagonal `θ_i` and subdiagonal 1, `B` upper
/// bidiagonal with diagonal `θ*_i` and superdiagonal `φ_i`, and
/// `C = γ/(q+q^-1) - (qAB - q^-1 BA)/(q^2 - q^-2)`.
pub fn build_vd<F: Field>(spec: &VdSpec<F>) -> Result<AwRealization<F>, RealizationError> {
    spec.validate()?;
    let n = spec.d + 1;
    let d = spec.d as i64;
    let q = &spec.q;
    let a = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            theta(&spec.a, q, d, i as i64)
        } else if i == j + 1 {
            F::one()
        } else {
            F::zero()
        }
    });
    let b = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            theta(&spec.b, q, d, i as i64)
        } else if j == i + 1 {
            phi(spec, j as i64)
        } else {
            F::zero()
        }
    });
    let character = vd_character(spec);
    let qi = inv(q);
    let q_sum = q.clone() + &qi;
    let q_diff = q_pow(q, 2) - q_pow(q, -2);
    let ab = &a * &b;
    let ba = &b * &a;
    let comm = &ab.scale(q) - &ba.scale(&qi);
    let c = &Matrix::scalar(n, character.gamma.div_ref(&q_sum).expect("q + q^-1 is nonzero"))
        - &comm.scale(&inv(&q_diff));
    let mut out = AwRealization::new(q.clone(), a, b, c)?;
    out.character = Some(character);
    Ok(out)
}
