//! Hermite normal form of submodules of `GF(p)[z]^q`.
//!
//! Generators are treated as vectors of length `q`. The pivot of a basis vector
//! is its last nonzero coordinate. In normal form pivot coordinates are strictly
//! increasing along the basis, pivots are monic, and every other basis vector has
//! an entry of smaller degree than the pivot in that coordinate (vectors with a
//! lower pivot are zero there). This form is unique for a given submodule.

use crate::poly::Poly;

#[derive(Debug, Clone)]
pub(crate) struct HermiteRows {
    /// Basis vectors, ordered by increasing pivot coordinate.
    pub rows: Vec<Vec<Poly>>,
    pub pivots: Vec<usize>,
    /// Row `i` holds the coefficients expressing `rows[i]` in the input
    /// generators, when tracking was requested.
    pub transform: Option<Vec<Vec<Poly>>>,
    /// Combinations of the generators that vanish (the remaining transform rows).
    #[cfg_attr(not(test), allow(dead_code))]
    pub syzygies: Option<Vec<Vec<Poly>>>,
}

fn axpy(dst: &mut [Poly], src: &[Poly], c: &Poly, p: u64) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.sub(&c.mul(s, p), p);
        }
    }
}

fn scale(v: &mut [Poly], c: u64, p: u64) {
    for e in v.iter_mut() {
        *e = e.scale(c, p);
    }
}

pub(crate) fn hermite_rows(p: u64, q: usize, generators: &[Vec<Poly>], track: bool) -> HermiteRows {
    let n = generators.len();
    let mut rows: Vec<Vec<Poly>> = generators.to_vec();
    let mut trans: Vec<Vec<Poly>> = if track {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Poly::constant(1, p) } else { Poly::zero() })
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut r = 0;
    let mut pivots_desc = Vec::new();
    for c in (0..q).rev() {
        if r == n {
            break;
        }
        let mut found = false;
        loop {
            let best = (r..n)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| (rows[i][c].degree(), i));
            let Some(best) = best else { break };
            found = true;
            rows.swap(r, best);
            if track {
                trans.swap(r, best);
            }
            let mut clean = true;
            for i in r + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let (quo, rem) = rows[i][c].div_rem(&rows[r][c], p);
                let (head, tail) = rows.split_at_mut(i);
                axpy(&mut tail[0], &head[r], &quo, p);
                if track {
                    let (th, tt) = trans.split_at_mut(i);
                    axpy(&mut tt[0], &th[r], &quo, p);
                }
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        let inv = crate::arith::inv_mod(rows[r][c].leading(), p).expect("prime modulus");
        scale(&mut rows[r], inv, p);
        if track {
            scale(&mut trans[r], inv, p);
        }
        for i in 0..r {
            if rows[i][c].is_zero() {
                continue;
            }
            let (quo, _) = rows[i][c].div_rem(&rows[r][c], p);
            if quo.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(r);
            axpy(&mut head[i], &tail[0], &quo, p);
            if track {
                let (th, tt) = trans.split_at_mut(r);
                axpy(&mut th[i], &tt[0], &quo, p);
            }
        }
        pivots_desc.push(c);
        r += 1;
    }
    rows.truncate(r);
    rows.reverse();
    pivots_desc.reverse();
    let (transform, syzygies) = if track {
        let syz = trans.split_off(r);
        trans.reverse();
        (Some(trans), Some(syz))
    } else {
        (None, None)
    };
    HermiteRows {
        rows,
        pivots: pivots_desc,
        transform,
        syzygies,
    }
}

/// Divides `v` by a basis in Hermite normal form, returning the quotients and
/// the remainder. The remainder is zero exactly when `v` lies in the span, and
/// both outputs are `GF(p)`-linear in `v`.
pub(crate) fn hermite_reduce(p: u64, basis: &[Vec<Poly>], pivots: &[usize], v: &[Poly]) -> (Vec<Poly>, Vec<Poly>) {
    let mut rest = v.to_vec();
    let mut coords = vec![Poly::zero(); basis.len()];
    for (k, &c) in pivots.iter().enumerate().rev() {
        let (quo, _) = rest[c].div_rem(&basis[k][c], p);
        axpy(&mut rest, &basis[k], &quo, p);
        coords[k] = quo;
    }
    (coords, rest)
}

/// Coefficients of `v` on a Hermite basis when `v` lies in its span.
pub(crate) fn hermite_divide(p: u64, basis: &[Vec<Poly>], pivots: &[usize], v: &[Poly]) -> Option<Vec<Poly>> {
    let (coords, rest) = hermite_reduce(p, basis, pivots, v);
    rest.iter().all(Poly::is_zero).then_some(coords)
}

/// Rank over the fraction field `GF(p)(z)`.
pub(crate) fn rank(p: u64, q: usize, vectors: &[Vec<Poly>]) -> usize {
    hermite_rows(p, q, vectors, false).rows.len()
}
