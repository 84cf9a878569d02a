use medium_exact::{linalg, Field, Mat};

use crate::error::ExteriorError;
use crate::index::{levi_civita, PAIRS};

/// The pairing `B = (ε^{IJ})`, i.e. `u∧v = uᵀ·B·v · dx^0123` for 2-forms.
pub fn pairing_matrix<T: Field>() -> Mat<T> {
    Mat::from_fn(6, 6, |i, j| {
        let (a, b) = PAIRS[i];
        let (c, d) = PAIRS[j];
        T::from_i64(levi_civita(a, b, c, d) as i64)
    })
}

/// `H_(α)` for α = 0..3: `-Id`, `Id`, and the two antidiagonal patterns.
pub fn hodge_basis<T: Field>(alpha: u8) -> Mat<T> {
    match alpha {
        0 => -Mat::identity(6),
        1 => Mat::identity(6),
        2 | 3 => Mat::from_fn(6, 6, |i, j| {
            if i + 3 == j || j + 3 == i {
                if alpha == 3 && (i == 2 || j == 2) {
                    -T::one()
                } else {
                    T::one()
                }
            } else {
                T::zero()
            }
        }),
        _ => panic!("H_(alpha) is defined for alpha in 0..=3"),
    }
}

/// Second compound: `C[I,K] = J_{I1K1}J_{I2K2} - J_{I2K1}J_{I1K2}`.
/// Column `K` is the wedge of columns `K1` and `K2` of `j`.
pub fn compound2<T: Field>(j: &Mat<T>) -> Mat<T> {
    assert!(j.nrows() == 4 && j.ncols() == 4, "compound2 needs a 4x4 matrix");
    Mat::from_fn(6, 6, |r, c| {
        let (i1, i2) = PAIRS[r];
        let (k1, k2) = PAIRS[c];
        j[(i1, k1)].clone() * j[(i2, k2)].clone() - j[(i2, k1)].clone() * j[(i1, k2)].clone()
    })
}

fn check_jacobian<T: Field>(j: &Mat<T>) -> Result<(), ExteriorError> {
    if j.nrows() != 4 || j.ncols() != 4 {
        return Err(ExteriorError::Shape { expected: 4, rows: j.nrows(), cols: j.ncols() });
    }
    let d = linalg::det(j);
    if d.vanishes() || !d.to_f64().is_finite() {
        return Err(ExteriorError::SingularJacobian { det: d.to_f64().abs() });
    }
    Ok(())
}

/// `P = (∂x̃^I/∂x^J)` for the Jacobian `J = (∂x̃^i/∂x^j)`.
pub fn induced_bivector_transform<T: Field>(j: &Mat<T>) -> Result<Mat<T>, ExteriorError> {
    check_jacobian(j)?;
    Ok(compound2(j))
}

/// Components of the same tensor in the coordinates `x̃` with Jacobian `J`:
/// `Ã = P⁻ᵀ·A·Pᵀ`, `P = C₂(J)`.
pub fn conjugate_by_coordinates<T: Field>(a: &Mat<T>, j: &Mat<T>) -> Result<Mat<T>, ExteriorError> {
    check_jacobian(j)?;
    let jinv = linalg::inverse(j).ok_or(ExteriorError::SingularJacobian { det: 0.0 })?;
    let p = compound2(j);
    let pinv_t = compound2(&jinv).transpose();
    Ok(&(&pinv_t * a) * &p.transpose())
}

/// `trace κ = ½ κ^{ij}_{ij}`, which is the matrix trace in the basis `O`.
pub fn trace22<T: Field>(a: &Mat<T>) -> T {
    a.trace()
}

/// Principal, skewon and axion parts.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionParts<T> {
    pub principal: Mat<T>,
    pub skewon: Mat<T>,
    pub axion_coefficient: T,
}

impl<T: Field> DecompositionParts<T> {
    pub fn reconstruct(&self) -> Mat<T> {
        &(&self.principal + &self.skewon) + &Mat::identity(6).scale(&self.axion_coefficient)
    }
}

/// Splits `A` into `Z ⊕ W ⊕ U`. The axion coefficient is removed first, then
/// the skewon part is `B·antisym(B·A')`, and the principal part is the rest.
pub fn decompose<T: Field>(a: &Mat<T>) -> DecompositionParts<T> {
    let b = pairing_matrix::<T>();
    let f = a.trace() / T::from_i64(6);
    let traceless = a - &Mat::identity(6).scale(&f);
    let ba = &b * &traceless;
    let half = T::one() / T::from_i64(2);
    let skewon = &b * &(&ba - &ba.transpose()).scale(&half);
    let principal = &traceless - &skewon;
    DecompositionParts { principal, skewon, axion_coefficient: f }
}
