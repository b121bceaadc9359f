//! Z2-graded vector spaces and graded matrices.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Parity};

/// Dimension `n|m` of a graded space `K^{n|m}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedDim {
    pub even: usize,
    pub odd: usize,
}

impl GradedDim {
    pub fn new(even: usize, odd: usize) -> Self {
        GradedDim { even, odd }
    }

    pub fn total(&self) -> usize {
        self.even + self.odd
    }

    /// `dim V_0 - dim V_1`
    pub fn euler_characteristic(&self) -> i64 {
        self.even as i64 - self.odd as i64
    }

    /// Canonical parity table: even indices first.
    pub fn parities(&self) -> Vec<Parity> {
        let mut p = vec![Parity::Even; self.even];
        p.extend(std::iter::repeat_n(Parity::Odd, self.odd));
        p
    }

    pub fn of_parities(parities: &[Parity]) -> Self {
        let odd = parities.iter().filter(|p| p.is_odd()).count();
        GradedDim::new(parities.len() - odd, odd)
    }

    /// Graded tensor product of dimensions.
    pub fn tensor(&self, other: &GradedDim) -> GradedDim {
        GradedDim::new(
            self.even * other.even + self.odd * other.odd,
            self.even * other.odd + self.odd * other.even,
        )
    }
}

/// A linear map between graded spaces, stored densely together with the
/// parity of every row and column index.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMatrix<F: std::fmt::Display> {
    pub entries: Matrix<F>,
    pub row_parity: Vec<Parity>,
    pub col_parity: Vec<Parity>,
    /// Parity of the map when it is homogeneous.
    pub parity: Option<Parity>,
}

impl<F: Field> GradedMatrix<F> {
    /// Wraps `entries`, detecting whether the map is homogeneous.
    pub fn new(
        entries: Matrix<F>,
        row_parity: Vec<Parity>,
        col_parity: Vec<Parity>,
    ) -> Result<Self> {
        if entries.rows() != row_parity.len() || entries.cols() != col_parity.len() {
            return Err(Error::Dimension(format!(
                "graded matrix is {}x{} but gradings have lengths {} and {}",
                entries.rows(),
                entries.cols(),
                row_parity.len(),
                col_parity.len()
            )));
        }
        let parity = homogeneous_parity(&entries, &row_parity, &col_parity);
        Ok(GradedMatrix {
            entries,
            row_parity,
            col_parity,
            parity,
        })
    }

    pub fn identity(grading: &[Parity]) -> Self {
        GradedMatrix {
            entries: Matrix::identity(grading.len()),
            row_parity: grading.to_vec(),
            col_parity: grading.to_vec(),
            parity: Some(Parity::Even),
        }
    }

    pub fn row_grading(&self) -> GradedDim {
        GradedDim::of_parities(&self.row_parity)
    }

    pub fn col_grading(&self) -> GradedDim {
        GradedDim::of_parities(&self.col_parity)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.col_parity != other.row_parity {
            return Err(Error::Dimension(
                "composition of incompatible gradings".into(),
            ));
        }
        let entries = self.entries.mul(&other.entries);
        let parity = match (self.parity, other.parity) {
            (Some(a), Some(b)) => Some(a + b),
            _ => homogeneous_parity(&entries, &self.row_parity, &other.col_parity),
        };
        Ok(GradedMatrix {
            entries,
            row_parity: self.row_parity.clone(),
            col_parity: other.col_parity.clone(),
            parity,
        })
    }
}

fn homogeneous_parity<F: Field>(m: &Matrix<F>, rows: &[Parity], cols: &[Parity]) -> Option<Parity> {
    let mut seen: Option<Parity> = None;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m[(i, j)].is_zero() {
                continue;
            }
            let p = rows[i] + cols[j];
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
    }
    Some(seen.unwrap_or(Parity::Even))
}

/// Sum of diagonal entries on even indices minus the sum on odd indices.
pub fn supertrace<F: Field>(m: &GradedMatrix<F>) -> Result<F> {
    if !m.entries.is_square() || m.row_parity != m.col_parity {
        return Err(Error::Dimension(
            "supertrace needs a square matrix with matching row and column grading".into(),
        ));
    }
    let mut acc = F::zero();
    for (i, p) in m.row_parity.iter().enumerate() {
        let d = &m.entries[(i, i)];
        match p {
            Parity::Even => acc += d,
            Parity::Odd => acc -= d,
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn supertrace_of_identity_is_n_minus_m() {
        for (n, m) in [(0, 0), (1, 1), (3, 1), (0, 2)] {
            let g = GradedDim::new(n, m).parities();
            let st = supertrace(&GradedMatrix::<Rational>::identity(&g)).unwrap();
            assert_eq!(st, Rational::from_i64(n as i64 - m as i64));
        }
    }

    #[test]
    fn mismatched_grading_is_rejected() {
        let g = GradedDim::new(1, 1).parities();
        let mut h = g.clone();
        h.reverse();
        let m = GradedMatrix::new(Matrix::<Rational>::identity(2), g, h).unwrap();
        assert!(matches!(supertrace(&m), Err(Error::Dimension(_))));
        let r = GradedMatrix::new(
            Matrix::<Rational>::zeros(2, 3),
            vec![Parity::Even; 2],
            vec![Parity::Even; 2],
        );
        assert!(r.is_err());
    }

    #[test]
    fn homogeneity_detection() {
        let g = GradedDim::new(1, 1).parities();
        let swap = Matrix::from_rows(vec![
            vec![Rational::from_i64(0), Rational::from_i64(1)],
            vec![Rational::from_i64(1), Rational::from_i64(0)],
        ]);
        let m = GradedMatrix::new(swap, g.clone(), g.clone()).unwrap();
        assert_eq!(m.parity, Some(Parity::Odd));
        let sq = m.compose(&m).unwrap();
        assert_eq!(sq.parity, Some(Parity::Even));
        let mixed = GradedMatrix::new(
            Matrix::from_fn(2, 2, |_, _| Rational::from_i64(1)),
            g.clone(),
            g,
        )
        .unwrap();
        assert_eq!(mixed.parity, None);
    }

    #[test]
    fn tensor_dims_multiply_euler_characteristic() {
        let a = GradedDim::new(3, 1);
        let b = GradedDim::new(2, 5);
        assert_eq!(
            a.tensor(&b).euler_characteristic(),
            a.euler_characteristic() * b.euler_characteristic()
        );
    }
}
