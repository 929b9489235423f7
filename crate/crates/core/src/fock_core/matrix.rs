use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock_core::state::FockVector;
use crate::scalar::{cr, Real, C};

/// Dense complex matrix acting on a truncated Fock space of `dim^modes` levels.
///
/// Storage is row-major. Two-mode spaces use the basis `|n_a, n_b>` with mode
/// `a` as the slow index, so basis index `n_a * dim + n_b`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<T: Real> {
    dim: usize,
    modes: usize,
    size: usize,
    entries: Vec<C<T>>,
}

/// Number of levels kept by the low-block convention: the top `ceil(dim/8)`
/// levels of each mode are excluded from identity and unitarity checks.
pub fn low_levels(dim: usize) -> usize {
    dim - dim.div_ceil(8)
}

pub(crate) fn space_size(dim: usize, modes: usize) -> Result<usize> {
    if dim < 2 {
        return Err(Error::InvalidDimension {
            dim,
            reason: "truncation must keep at least two levels",
        });
    }
    match modes {
        1 => Ok(dim),
        2 => Ok(dim * dim),
        _ => Err(Error::InvalidDimension {
            dim,
            reason: "only one- and two-mode spaces are supported",
        }),
    }
}

impl<T: Real> OperatorMatrix<T> {
    pub fn zeros(dim: usize, modes: usize) -> Result<Self> {
        let size = space_size(dim, modes)?;
        Ok(Self {
            dim,
            modes,
            size,
            entries: vec![C::zero(); size * size],
        })
    }

    pub fn identity(dim: usize, modes: usize) -> Result<Self> {
        let mut m = Self::zeros(dim, modes)?;
        for i in 0..m.size {
            m.entries[i * m.size + i] = C::one();
        }
        Ok(m)
    }

    pub fn from_fn(
        dim: usize,
        modes: usize,
        mut f: impl FnMut(usize, usize) -> C<T>,
    ) -> Result<Self> {
        let mut m = Self::zeros(dim, modes)?;
        for i in 0..m.size {
            for j in 0..m.size {
                m.entries[i * m.size + j] = f(i, j);
            }
        }
        Ok(m)
    }

    /// Truncation dimension per mode.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Side length of the matrix, `dim^modes`.
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C<T> {
        self.entries[row * self.size + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C<T>) {
        self.entries[row * self.size + col] = value;
    }

    #[inline]
    pub(crate) fn add_at(&mut self, row: usize, col: usize, value: C<T>) {
        self.entries[row * self.size + col] += value;
    }

    pub fn entries(&self) -> &[C<T>] {
        &self.entries
    }

    /// Two-mode entry `<(n1, n2)| M |(l, k)>`.
    pub fn get2(&self, n1: usize, n2: usize, l: usize, k: usize) -> C<T> {
        debug_assert_eq!(self.modes, 2);
        self.get(n1 * self.dim + n2, l * self.dim + k)
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.modes != other.modes {
            return Err(Error::SpaceMismatch {
                left: format!("dim={}, modes={}", self.dim, self.modes),
                right: format!("dim={}, modes={}", other.dim, other.modes),
            });
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        let n = self.size;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: C<T>) -> Self {
        let mut out = self.clone();
        out.entries.iter_mut().for_each(|e| *e *= s);
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        out.entries
            .iter_mut()
            .zip(&other.entries)
            .for_each(|(a, b)| *a += *b);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        out.entries
            .iter_mut()
            .zip(&other.entries)
            .for_each(|(a, b)| *a -= *b);
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.size;
        let mut out = vec![C::zero(); n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let other_row = &other.entries[k * n..(k + 1) * n];
                for (o, b) in row.iter_mut().zip(other_row) {
                    *o += a * *b;
                }
            }
        }
        Self {
            dim: self.dim,
            modes: self.modes,
            size: n,
            entries: out,
        }
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = Self::identity(self.dim, self.modes).expect("valid space");
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    pub fn apply(&self, v: &FockVector<T>) -> Result<FockVector<T>> {
        if v.dim() != self.dim || v.modes() != self.modes {
            return Err(Error::SpaceMismatch {
                left: format!("operator dim={}, modes={}", self.dim, self.modes),
                right: format!("vector dim={}, modes={}", v.dim(), v.modes()),
            });
        }
        let mut out = vec![C::zero(); self.size];
        self.apply_into(v.amplitudes(), &mut out);
        FockVector::from_amplitudes(out, self.dim, self.modes)
    }

    pub(crate) fn apply_into(&self, input: &[C<T>], out: &mut [C<T>]) {
        let n = self.size;
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.entries[i * n..(i + 1) * n];
            *o = row
                .iter()
                .zip(input)
                .fold(C::zero(), |acc, (a, x)| acc + *a * *x);
        }
    }

    /// Max-norm `max |M_ij|`.
    pub fn max_abs(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, e| m.max(e.norm()))
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> T {
        let n = self.size;
        (0..n)
            .map(|j| (0..n).fold(T::zero(), |acc, i| acc + self.entries[i * n + j].norm()))
            .fold(T::zero(), T::max)
    }

    /// Indices of basis states in the low block, i.e. every mode index below
    /// [`low_levels`].
    pub fn low_block_indices(&self) -> Vec<usize> {
        let keep = low_levels(self.dim);
        match self.modes {
            1 => (0..keep).collect(),
            _ => (0..keep)
                .flat_map(|a| (0..keep).map(move |b| a * self.dim + b))
                .collect(),
        }
    }

    /// `max |A_ij - B_ij|` over the low block.
    pub fn max_diff_low_block(&self, other: &Self) -> Result<T> {
        self.check_same_space(other)?;
        let idx = self.low_block_indices();
        let mut worst = T::zero();
        for &i in &idx {
            for &j in &idx {
                worst = worst.max((self.get(i, j) - other.get(i, j)).norm());
            }
        }
        Ok(worst)
    }

    /// `max |(U^dagger U - I)_ij|` over the low block.
    pub fn unitarity_defect(&self) -> T {
        let idx = self.low_block_indices();
        let n = self.size;
        let mut worst = T::zero();
        for &i in &idx {
            for &j in &idx {
                let mut acc = C::zero();
                for k in 0..n {
                    acc += self.entries[k * n + i].conj() * self.entries[k * n + j];
                }
                if i == j {
                    acc -= C::one();
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// Solves `self * X = rhs` by LU factorisation with partial pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        self.check_same_space(rhs)?;
        let entries = solve_dense(self.entries.clone(), rhs.entries.clone(), self.size)?;
        Ok(Self {
            dim: self.dim,
            modes: self.modes,
            size: self.size,
            entries,
        })
    }

    /// Matrix exponential by scaling and squaring with a [13/13] Padé
    /// approximant (Higham 2005).
    pub fn expm(&self) -> Self {
        let entries = expm_dense(&self.entries, self.size);
        Self {
            dim: self.dim,
            modes: self.modes,
            size: self.size,
            entries,
        }
    }
}

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

fn mat_mul<T: Real>(a: &[C<T>], b: &[C<T>], n: usize) -> Vec<C<T>> {
    let mut out = vec![C::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

fn lin_comb<T: Real>(terms: &[(f64, &[C<T>])], n: usize) -> Vec<C<T>> {
    let mut out = vec![C::zero(); n * n];
    for &(coef, m) in terms {
        let s = T::lit(coef);
        for (o, x) in out.iter_mut().zip(m) {
            *o += *x * s;
        }
    }
    out
}

/// Dense exponential of an `n x n` row-major block.
pub(crate) fn expm_dense<T: Real>(a: &[C<T>], n: usize) -> Vec<C<T>> {
    if n == 0 {
        return Vec::new();
    }
    let norm = (0..n)
        .map(|j| (0..n).fold(T::zero(), |acc, i| acc + a[i * n + j].norm()))
        .fold(T::zero(), T::max);
    let mut identity = vec![C::zero(); n * n];
    for i in 0..n {
        identity[i * n + i] = C::one();
    }
    if norm == T::zero() {
        return identity;
    }
    let ratio = norm.as_f64() / THETA13;
    let squarings = if ratio > 1.0 {
        ratio.log2().ceil() as i32
    } else {
        0
    };
    let scale = cr(T::lit(2f64.powi(-squarings)));
    let a1: Vec<C<T>> = a.iter().map(|x| *x * scale).collect();
    let a2 = mat_mul(&a1, &a1, n);
    let a4 = mat_mul(&a2, &a2, n);
    let a6 = mat_mul(&a4, &a2, n);
    let b = &PADE13;

    let inner_u = lin_comb(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)], n);
    let mut u_poly = mat_mul(&a6, &inner_u, n);
    let tail_u = lin_comb(
        &[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], &identity)],
        n,
    );
    u_poly.iter_mut().zip(&tail_u).for_each(|(x, y)| *x += *y);
    let u = mat_mul(&a1, &u_poly, n);

    let inner_v = lin_comb(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)], n);
    let mut v = mat_mul(&a6, &inner_v, n);
    let tail_v = lin_comb(
        &[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], &identity)],
        n,
    );
    v.iter_mut().zip(&tail_v).for_each(|(x, y)| *x += *y);

    let p: Vec<C<T>> = v.iter().zip(&u).map(|(x, y)| *x + *y).collect();
    let q: Vec<C<T>> = v.iter().zip(&u).map(|(x, y)| *x - *y).collect();
    let mut r = solve_dense(q, p, n).expect("Padé denominator is nonsingular for scaled input");
    for _ in 0..squarings {
        r = mat_mul(&r, &r, n);
    }
    r
}

fn solve_dense<T: Real>(mut a: Vec<C<T>>, mut b: Vec<C<T>>, n: usize) -> Result<Vec<C<T>>> {
    for col in 0..n {
        let mut pivot = col;
        let mut best = T::zero();
        for r in col..n {
            let v = a[r * n + col].norm();
            if v > best {
                best = v;
                pivot = r;
            }
        }
        if best == T::zero() {
            return Err(Error::Singular);
        }
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
                b.swap(col * n + j, pivot * n + j);
            }
        }
        let inv = a[col * n + col].inv();
        for r in col + 1..n {
            let factor = a[r * n + col] * inv;
            if factor.is_zero() {
                continue;
            }
            for j in col..n {
                let v = a[col * n + j];
                a[r * n + j] -= factor * v;
            }
            for j in 0..n {
                let v = b[col * n + j];
                b[r * n + j] -= factor * v;
            }
        }
    }
    for col in (0..n).rev() {
        let inv = a[col * n + col].inv();
        for j in 0..n {
            let mut acc = b[col * n + j];
            for k in col + 1..n {
                acc -= a[col * n + k] * b[k * n + j];
            }
            b[col * n + j] = acc * inv;
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn low_levels_excludes_top_eighth() {
        assert_eq!(low_levels(8), 7);
        assert_eq!(low_levels(60), 52);
        assert_eq!(low_levels(2), 1);
    }

    #[test]
    fn expm_of_rotation_generator() {
        // [[0, -t], [t, 0]] exponentiates to a rotation by t.
        let t = 0.83f64;
        let g = OperatorMatrix::from_fn(2, 1, |i, j| match (i, j) {
            (0, 1) => c(-t, 0.0),
            (1, 0) => c(t, 0.0),
            _ => C::zero(),
        })
        .unwrap();
        let e = g.expm();
        assert!((e.get(0, 0).re - t.cos()).abs() < 1e-15);
        assert!((e.get(1, 0).re - t.sin()).abs() < 1e-15);
        assert!((e.get(0, 1).re + t.sin()).abs() < 1e-15);
    }

    #[test]
    fn expm_of_large_diagonal_uses_squaring() {
        let g = OperatorMatrix::from_fn(3, 1, |i, j| {
            if i == j {
                c(0.0, 7.5 * (i as f64 + 1.0))
            } else {
                C::zero()
            }
        })
        .unwrap();
        let e = g.expm();
        for i in 0..3 {
            let want = C::from_polar(1.0, 7.5 * (i as f64 + 1.0));
            assert!((e.get(i, i) - want).norm() < 1e-12);
        }
    }

    #[test]
    fn solve_recovers_known_product() {
        let a = OperatorMatrix::from_fn(3, 1, |i, j| {
            c((i + 2 * j) as f64 + 1.0, (i * j) as f64 - 0.5)
        })
        .unwrap()
        .add(&OperatorMatrix::identity(3, 1).unwrap().scale(c(5.0, 0.0)))
        .unwrap();
        let x = OperatorMatrix::from_fn(3, 1, |i, j| c(i as f64 - j as f64, 1.0)).unwrap();
        let b = a.mul(&x).unwrap();
        let solved = a.solve(&b).unwrap();
        assert!(solved.sub(&x).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = OperatorMatrix::<f64>::identity(3, 1).unwrap();
        let b = OperatorMatrix::<f64>::identity(4, 1).unwrap();
        assert!(matches!(a.mul(&b), Err(Error::SpaceMismatch { .. })));
        assert!(OperatorMatrix::<f64>::zeros(1, 1).is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let m =
            OperatorMatrix::from_fn(3, 1, |i, j| c(0.1 * (i + j) as f64, 0.05 * i as f64)).unwrap();
        let mut mm = OperatorMatrix::identity(3, 1).unwrap();
        for _ in 0..7 {
            mm = mm.mul(&m).unwrap();
        }
        assert!(m.pow(7).sub(&mm).unwrap().max_abs() < 1e-14);
    }
}
