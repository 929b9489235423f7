use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Largest degree accepted by [`hermite_complex`].
pub const MAX_HERMITE_DEGREE: usize = 512;

/// Physicists' Hermite polynomial `H_n(z)` for complex `z`, by the three-term
/// recurrence `H_{n+1} = 2 z H_n - 2 n H_{n-1}`.
pub fn hermite_complex<T: Real>(n: usize, z: C<T>) -> Result<C<T>> {
    if n > MAX_HERMITE_DEGREE {
        return Err(Error::DegreeOutOfRange {
            n,
            max: MAX_HERMITE_DEGREE,
        });
    }
    let two = T::lit(2.0);
    let mut prev = C::one();
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = z * two;
    for k in 1..n {
        let next = z * cur * two - prev * (two * T::from_count(k));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Rescaled sequence `g_n = t^{n/2} H_n(w) / sqrt(n!)` for `n = 0..=n_max`.
///
/// The recurrence is run on `g_n` directly,
/// `g_{n+1} = (s g_n - 2 t sqrt(n) g_{n-1}) / sqrt(n+1)` with `s = 2 sqrt(t) w`,
/// so neither the Hermite growth nor the `t^{n/2}` decay is ever formed and
/// the product stays representable for large `n`. Passing `s` instead of `w`
/// keeps the `t -> 0` limit regular.
pub fn scaled_hermite_sequence<T: Real>(n_max: usize, s: C<T>, t: T) -> Vec<C<T>> {
    let mut g = Vec::with_capacity(n_max + 1);
    g.push(C::one());
    if n_max == 0 {
        return g;
    }
    g.push(s);
    let two_t = T::lit(2.0) * t;
    for n in 1..n_max {
        let next =
            (s * g[n] - g[n - 1] * (two_t * T::from_count(n).sqrt())) / T::from_count(n + 1).sqrt();
        g.push(next);
    }
    g
}
