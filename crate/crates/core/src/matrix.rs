//! Small dense complex matrices.
//!
//! [`ComplexMatrix`] is a plain square matrix in row-major order. [`UnitaryMatrix`]
//! wraps one whose unitarity has been checked at construction (`U†U = I` within
//! [`UNITARY_TOL`]); every gate handed to the simulator is of this type.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// Construction-time unitarity tolerance (max entrywise deviation of `U†U` from `I`).
pub const UNITARY_TOL: f64 = 1e-10;

/// Tolerance on orthonormality of the vector sets handed to [`complete_unitary`].
pub const ORTHONORMAL_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("matrix dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix from rows; every row must have as many entries as there are rows.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    actual: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(dim, entries)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = ONE;
        }
        Self { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.dim)
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut entries = vec![ZERO; n * n];
        for r in 0..n {
            for c in 0..n {
                entries[c * n + r] = self.entries[r * n + c].conj();
            }
        }
        Self { dim: n, entries }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                actual: rhs.dim,
            });
        }
        let n = self.dim;
        let mut entries = vec![ZERO; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    entries[r * n + c] += a * rhs.entries[k * n + c];
                }
            }
        }
        Ok(Self { dim: n, entries })
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let (n, m) = (self.dim, rhs.dim);
        let dim = n * m;
        let mut entries = vec![ZERO; dim * dim];
        for ar in 0..n {
            for ac in 0..n {
                let a = self.entries[ar * n + ac];
                for br in 0..m {
                    for bc in 0..m {
                        entries[(ar * m + br) * dim + ac * m + bc] = a * rhs.entries[br * m + bc];
                    }
                }
            }
        }
        Self { dim, entries }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Entrywise sum; panics on dimension mismatch.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Matrix-vector product on raw amplitudes.
    pub fn apply_to(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                actual: v.len(),
            });
        }
        Ok(self
            .rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `M†M - I`.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += self.entries[k * n + r].conj() * self.entries[k * n + c];
                }
                if r == c {
                    acc -= ONE;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for row in self.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// True iff every entry of `|M†M - I|` is at most `tol`.
pub fn check_unitary(m: &ComplexMatrix, tol: f64) -> bool {
    m.unitarity_deviation() <= tol
}

/// A square matrix verified unitary at construction; dimension is a power of two.
#[derive(Clone, PartialEq)]
pub struct UnitaryMatrix(ComplexMatrix);

impl UnitaryMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.dim().is_power_of_two() {
            return Err(Error::Invalid(format!(
                "unitary dimension {} is not a power of two",
                m.dim()
            )));
        }
        let dev = m.unitarity_deviation();
        if dev > UNITARY_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self(m))
    }

    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Result<Self> {
        Self::new(ComplexMatrix::from_rows(rows)?)
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim.is_power_of_two(), "dimension must be a power of two");
        Self(ComplexMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Number of qubits the matrix acts on.
    pub fn n_qubits(&self) -> usize {
        self.0.dim().trailing_zeros() as usize
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0.get(row, col)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Product `self · rhs`; the result is re-checked for unitarity.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        Self::new(self.0.matmul(&rhs.0)?)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.max_abs_diff(&other.0)
    }
}

impl fmt::Debug for UnitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Unitary")?;
        self.0.fmt(f)
    }
}

impl Mul for &UnitaryMatrix {
    type Output = UnitaryMatrix;

    /// Panics if dimensions differ.
    fn mul(self, rhs: Self) -> UnitaryMatrix {
        let product = self.0.matmul(&rhs.0).expect("unitary dimension mismatch");
        UnitaryMatrix(product)
    }
}

/// Kronecker product `a ⊗ b`; `a` acts on the more significant qubits.
pub fn tensor_product(a: &UnitaryMatrix, b: &UnitaryMatrix) -> UnitaryMatrix {
    UnitaryMatrix(a.0.kron(&b.0))
}

/// Builds the unitary that sends each input state to its paired output state.
///
/// Both sets must be orthonormal. The unspecified part of the map is fixed by
/// extending each set to a full basis with Gram-Schmidt over the canonical
/// basis vectors taken in index order, then pairing the extra input and output
/// vectors in the order they were produced. Identical pairs always produce
/// bit-identical matrices.
pub fn complete_unitary(pairs: &[(StateVector, StateVector)]) -> Result<UnitaryMatrix> {
    let Some((first, _)) = pairs.first() else {
        return Err(Error::Consistency("no input/output pairs given".into()));
    };
    let dim = first.dim();
    for (input, output) in pairs {
        for v in [input, output] {
            if v.dim() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    actual: v.dim(),
                });
            }
        }
    }
    if pairs.len() > dim {
        return Err(Error::Consistency(format!(
            "{} pairs exceed dimension {dim}",
            pairs.len()
        )));
    }

    let inputs: Vec<Vec<Complex64>> = pairs.iter().map(|(i, _)| i.amplitudes().to_vec()).collect();
    let outputs: Vec<Vec<Complex64>> = pairs.iter().map(|(_, o)| o.amplitudes().to_vec()).collect();
    check_orthonormal(&inputs, "inputs")?;
    check_orthonormal(&outputs, "outputs")?;

    let inputs = extend_to_basis(inputs, dim);
    let outputs = extend_to_basis(outputs, dim);

    // W = Σ_k |out_k⟩⟨in_k|
    let mut w = ComplexMatrix::zeros(dim);
    for (input, output) in inputs.iter().zip(&outputs) {
        for (r, out) in output.iter().enumerate() {
            if *out == ZERO {
                continue;
            }
            for (c, inp) in input.iter().enumerate() {
                w.entries[r * dim + c] += out * inp.conj();
            }
        }
    }
    UnitaryMatrix::new(w)
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn check_orthonormal(vectors: &[Vec<Complex64>], what: &str) -> Result<()> {
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate().skip(i) {
            let expected = if i == j { ONE } else { ZERO };
            let dev = (inner(a, b) - expected).norm();
            if dev > ORTHONORMAL_TOL {
                return Err(Error::Consistency(format!(
                    "{what} not orthonormal: <{i}|{j}> off by {dev:e}"
                )));
            }
        }
    }
    Ok(())
}

/// Appends canonical basis vectors, orthogonalized against everything so far,
/// until the set spans the space. Vectors whose residual is tiny are skipped.
fn extend_to_basis(mut basis: Vec<Vec<Complex64>>, dim: usize) -> Vec<Vec<Complex64>> {
    const RESIDUAL_MIN: f64 = 1e-6;
    for k in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut v = vec![ZERO; dim];
        v[k] = ONE;
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let proj = inner(b, &v);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= proj * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < RESIDUAL_MIN {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= norm);
        basis.push(v);
    }
    basis
}
