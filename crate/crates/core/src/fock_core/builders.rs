use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock_core::matrix::{expm_dense, space_size, OperatorMatrix};
use crate::fock_core::state::FockVector;
use crate::fock_core::SqueezeParam;
use crate::scalar::{cr, Real, C};

/// Mode selector for ladder operators on a two-mode space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

/// Annihilation operator `a` with `<n-1|a|n> = sqrt(n)`.
///
/// On a two-mode space the operator acts on `which` and is the identity on
/// the other mode. The creation operator is the adjoint.
pub fn build_ladder<T: Real>(dim: usize, modes: usize, which: Mode) -> Result<OperatorMatrix<T>> {
    let mut m = OperatorMatrix::zeros(dim, modes)?;
    for (row, col, v) in ladder_entries::<T>(dim, modes, which) {
        m.set(row, col, cr(v));
    }
    Ok(m)
}

fn ladder_entries<T: Real>(dim: usize, modes: usize, which: Mode) -> Vec<(usize, usize, T)> {
    let sq = |n: usize| T::from_count(n).sqrt();
    match (modes, which) {
        (1, _) => (1..dim).map(|n| (n - 1, n, sq(n))).collect(),
        (_, Mode::A) => (1..dim)
            .flat_map(|na| (0..dim).map(move |nb| ((na - 1) * dim + nb, na * dim + nb, na)))
            .map(|(r, c, n)| (r, c, sq(n)))
            .collect(),
        (_, Mode::B) => (0..dim)
            .flat_map(|na| (1..dim).map(move |nb| (na * dim + nb - 1, na * dim + nb, nb)))
            .map(|(r, c, n)| (r, c, sq(n)))
            .collect(),
    }
}

/// `D(alpha) = exp(alpha a^dag - alpha^* a)` on the truncated space.
pub fn build_displacement<T: Real>(alpha: C<T>, dim: usize) -> Result<OperatorMatrix<T>> {
    let mut g = OperatorMatrix::zeros(dim, 1)?;
    for n in 1..dim {
        let s = T::from_count(n).sqrt();
        // <n|a^dag|n-1> = sqrt(n), <n-1|a|n> = sqrt(n)
        g.set(n, n - 1, alpha * s);
        g.set(n - 1, n, -alpha.conj() * s);
    }
    Ok(g.expm())
}

/// `S(zeta) = exp[(zeta^* a^2 - zeta a^dag^2) / 2]` on the truncated space.
pub fn build_squeeze<T: Real>(zeta: SqueezeParam<T>, dim: usize) -> Result<OperatorMatrix<T>> {
    let z = zeta.zeta();
    let half = T::lit(0.5);
    let mut entries = Vec::new();
    for n in 2..dim {
        let s = (T::from_count(n) * T::from_count(n - 1)).sqrt();
        entries.push((n - 2, n, z.conj() * s * half));
        entries.push((n, n - 2, -z * s * half));
    }
    let blocks = SectorExp::new(dim, 1, &entries, |i| i % 2);
    blocks.to_dense()
}

fn two_mode_squeeze_generator<T: Real>(r: T, dim: usize) -> Vec<(usize, usize, C<T>)> {
    let half_r = r / T::lit(2.0);
    let mut entries = Vec::new();
    for na in 1..dim {
        for nb in 1..dim {
            let s = (T::from_count(na) * T::from_count(nb)).sqrt() * half_r;
            let hi = na * dim + nb;
            let lo = (na - 1) * dim + nb - 1;
            // a^dag b^dag raises both, -a b lowers both
            entries.push((hi, lo, cr(s)));
            entries.push((lo, hi, cr(-s)));
        }
    }
    entries
}

fn beam_splitter_generator<T: Real>(angle: T, dim: usize) -> Vec<(usize, usize, C<T>)> {
    let mut entries = Vec::new();
    for na in 0..dim - 1 {
        for nb in 1..dim {
            // a^dag b: |na, nb> -> sqrt((na+1) nb) |na+1, nb-1>
            let s = (T::from_count(na + 1) * T::from_count(nb)).sqrt() * angle;
            let from = na * dim + nb;
            let to = (na + 1) * dim + nb - 1;
            entries.push((to, from, cr(s)));
            // -a b^dag is the adjoint with a minus sign
            entries.push((from, to, cr(-s)));
        }
    }
    entries
}

/// Two-mode squeezer `exp[(r/2)(a^dag b^dag - a b)]`, i.e. `S_ab(-r/2)`.
pub fn build_two_mode_squeeze<T: Real>(r: T, dim: usize) -> Result<OperatorMatrix<T>> {
    two_mode_squeeze_sectors(r, dim)?.to_dense()
}

pub(crate) fn two_mode_squeeze_sectors<T: Real>(r: T, dim: usize) -> Result<SectorExp<T>> {
    space_size(dim, 2)?;
    let entries = two_mode_squeeze_generator(r, dim);
    Ok(SectorExp::new(dim, 2, &entries, |i| {
        let (na, nb) = (i / dim, i % dim);
        na + dim - nb
    }))
}

/// 50-50 beam splitter `B = exp[(pi/4)(a^dag b - a b^dag)]`.
pub fn build_beam_splitter<T: Real>(dim: usize) -> Result<OperatorMatrix<T>> {
    beam_splitter_sectors(dim, false)?.to_dense()
}

/// Sector blocks of `B` (or of `B^dag` when `adjoint` is set).
pub(crate) fn beam_splitter_sectors<T: Real>(dim: usize, adjoint: bool) -> Result<SectorExp<T>> {
    space_size(dim, 2)?;
    let angle = if adjoint {
        -T::FRAC_PI_4()
    } else {
        T::FRAC_PI_4()
    };
    let entries = beam_splitter_generator(angle, dim);
    Ok(SectorExp::new(dim, 2, &entries, |i| i / dim + i % dim))
}

/// Exponential of a generator that is block diagonal in a conserved label.
///
/// The beam splitter conserves `n_a + n_b`, the two-mode squeezer conserves
/// `n_a - n_b` and the single-mode squeezer conserves parity. On the truncated
/// space these generators remain exactly block diagonal, so exponentiating
/// each block is exact and far cheaper than one dense exponential.
pub(crate) struct SectorExp<T: Real> {
    dim: usize,
    modes: usize,
    blocks: Vec<(Vec<usize>, Vec<C<T>>)>,
}

impl<T: Real> SectorExp<T> {
    fn new(
        dim: usize,
        modes: usize,
        generator: &[(usize, usize, C<T>)],
        label: impl Fn(usize) -> usize,
    ) -> Self {
        let size = match modes {
            1 => dim,
            _ => dim * dim,
        };
        let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..size {
            members.entry(label(i)).or_default().push(i);
        }
        let mut position = vec![(0usize, 0usize); size];
        let mut sectors: Vec<Vec<usize>> = Vec::with_capacity(members.len());
        for (s, (_, idx)) in members.into_iter().enumerate() {
            for (p, &i) in idx.iter().enumerate() {
                position[i] = (s, p);
            }
            sectors.push(idx);
        }
        let mut gens: Vec<Vec<C<T>>> = sectors
            .iter()
            .map(|idx| vec![C::zero(); idx.len() * idx.len()])
            .collect();
        for &(row, col, v) in generator {
            let (sr, pr) = position[row];
            let (sc, pc) = position[col];
            debug_assert_eq!(sr, sc, "generator couples different sectors");
            let n = sectors[sr].len();
            gens[sr][pr * n + pc] += v;
        }
        let blocks = sectors
            .into_iter()
            .zip(gens)
            .map(|(idx, g)| {
                let n = idx.len();
                (idx, expm_dense(&g, n))
            })
            .collect();
        Self { dim, modes, blocks }
    }

    pub(crate) fn to_dense(&self) -> Result<OperatorMatrix<T>> {
        let mut m = OperatorMatrix::zeros(self.dim, self.modes)?;
        for (idx, block) in &self.blocks {
            let n = idx.len();
            for (p, &i) in idx.iter().enumerate() {
                for (q, &j) in idx.iter().enumerate() {
                    m.add_at(i, j, block[p * n + q]);
                }
            }
        }
        Ok(m)
    }

    pub(crate) fn apply(&self, v: &FockVector<T>) -> Result<FockVector<T>> {
        if v.dim() != self.dim || v.modes() != self.modes {
            return Err(Error::SpaceMismatch {
                left: format!("operator dim={}, modes={}", self.dim, self.modes),
                right: format!("vector dim={}, modes={}", v.dim(), v.modes()),
            });
        }
        let input = v.amplitudes();
        let mut out = vec![C::zero(); input.len()];
        for (idx, block) in &self.blocks {
            let n = idx.len();
            for (p, &i) in idx.iter().enumerate() {
                let mut acc = C::zero();
                for (q, &j) in idx.iter().enumerate() {
                    acc += block[p * n + q] * input[j];
                }
                out[i] = acc;
            }
        }
        FockVector::from_amplitudes(out, self.dim, self.modes)
    }
}

/// Coherent state `D(alpha)|0>` on the truncated space.
pub fn coherent_state<T: Real>(alpha: C<T>, dim: usize) -> Result<FockVector<T>> {
    build_displacement(alpha, dim)?.apply(&FockVector::vacuum(dim, 1)?)
}

/// Total photon number diagonal `n_a + n_b` of a two-mode basis index.
pub fn total_number(dim: usize, index: usize) -> usize {
    index / dim + index % dim
}
