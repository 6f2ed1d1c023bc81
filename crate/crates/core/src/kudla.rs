//! Bookkeeping for the rank filtration of the Weil representation and for the
//! composition factors of its Jacquet modules, with the exponent tables of
//! the characters twisting each factor.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::segments::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// Which Levi block an exponent lives on. Unprimed blocks belong to the
/// `GL_n` side, primed ones to the `GL_m` side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockLabel {
    TMinusI,
    I,
    NMinusT,
    NMinusI,
    PrimeI,
    PrimeMMinusI,
    PrimeTMinusI,
    PrimeMMinusT,
}

impl BlockLabel {
    pub fn size(self, n: usize, m: usize, t: usize, i: usize) -> usize {
        match self {
            BlockLabel::TMinusI | BlockLabel::PrimeTMinusI => t - i,
            BlockLabel::I | BlockLabel::PrimeI => i,
            BlockLabel::NMinusT => n - t,
            BlockLabel::NMinusI => n - i,
            BlockLabel::PrimeMMinusI => m - i,
            BlockLabel::PrimeMMinusT => m - t,
        }
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockLabel::TMinusI => "G_{t-i}",
            BlockLabel::I => "G_i",
            BlockLabel::NMinusT => "G_{n-t}",
            BlockLabel::NMinusI => "G_{n-i}",
            BlockLabel::PrimeI => "G'_i",
            BlockLabel::PrimeMMinusI => "G'_{m-i}",
            BlockLabel::PrimeTMinusI => "G'_{t-i}",
            BlockLabel::PrimeMMinusT => "G'_{m-t}",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockRole {
    pub side: Side,
    pub label: BlockLabel,
    pub size: usize,
}

/// One composition factor of a Jacquet module of the Weil representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiltrationFactor {
    pub side: Side,
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub i: usize,
    /// Non-empty blocks with the exponent `s` of `ν^s` on each.
    pub blocks: Vec<(BlockRole, Rat)>,
    /// Sizes of the smaller Weil representation appearing in the factor.
    pub inner: (usize, usize),
    /// Whether the regular representation of `G_i × G'_i` appears.
    pub carries_rho: bool,
}

impl FiltrationFactor {
    pub fn exponent(&self, label: BlockLabel) -> Option<Rat> {
        self.blocks.iter().find(|(r, _)| r.label == label).map(|(_, s)| *s)
    }
}

const LEFT_BLOCKS: [BlockLabel; 5] = [
    BlockLabel::TMinusI,
    BlockLabel::I,
    BlockLabel::NMinusT,
    BlockLabel::PrimeI,
    BlockLabel::PrimeMMinusI,
];

const RIGHT_BLOCKS: [BlockLabel; 5] = [
    BlockLabel::NMinusI,
    BlockLabel::I,
    BlockLabel::PrimeI,
    BlockLabel::PrimeTMinusI,
    BlockLabel::PrimeMMinusT,
];

fn validate(n: usize, m: usize, t: usize, i: Option<usize>, side: Side) -> Result<usize> {
    let (outer, other) = match side {
        Side::Left => (n, m),
        Side::Right => (m, n),
    };
    if t == 0 || t > outer {
        return Err(Error::IndexOutOfRange(format!("{side} t={t} outside 1..={outer}")));
    }
    let top = t.min(other);
    if let Some(i) = i {
        if i > top {
            return Err(Error::IndexOutOfRange(format!("{side} i={i} outside 0..={top}")));
        }
    }
    Ok(top)
}

fn make_factor(
    side: Side,
    (n, m, t, i): (usize, usize, usize, usize),
    exponent: impl Fn(BlockLabel) -> Rat,
) -> FiltrationFactor {
    let labels = match side {
        Side::Left => LEFT_BLOCKS,
        Side::Right => RIGHT_BLOCKS,
    };
    let blocks = labels
        .iter()
        .map(|&label| (BlockRole { side, label, size: label.size(n, m, t, i) }, label))
        .filter(|(role, _)| role.size > 0)
        .map(|(role, label)| (role, exponent(label)))
        .collect();
    let inner = match side {
        Side::Left => (n - t, m - i),
        Side::Right => (n - i, m - t),
    };
    FiltrationFactor { side, n, m, t, i, blocks, inner, carries_rho: i > 0 }
}

fn left_table(n: usize, m: usize, t: usize, i: usize) -> FiltrationFactor {
    let (n2, m2, t2, i2) = (n as i64, m as i64, t as i64, i as i64);
    make_factor(Side::Left, (n, m, t, i), |label| {
        Rat::half(match label {
            BlockLabel::TMinusI => 2 * m2 - n2 + t2 - i2,
            BlockLabel::I => 2 * m2 - n2 + 2 * t2 - i2,
            BlockLabel::NMinusT => t2,
            BlockLabel::PrimeI => -m2 - 2 * t2 + i2,
            BlockLabel::PrimeMMinusI => -2 * t2 + i2,
            _ => unreachable!("not a left block"),
        })
    })
}

fn right_table(n: usize, m: usize, t: usize, i: usize) -> FiltrationFactor {
    let (n2, m2, t2, i2) = (n as i64, m as i64, t as i64, i as i64);
    make_factor(Side::Right, (n, m, t, i), |label| {
        Rat::half(match label {
            BlockLabel::NMinusI => 2 * t2 - i2,
            BlockLabel::I => n2 + 2 * t2 - i2,
            BlockLabel::PrimeI => -2 * n2 + m2 - 2 * t2 + i2,
            BlockLabel::PrimeTMinusI => m2 - 2 * n2 - t2 + i2,
            BlockLabel::PrimeMMinusT => -t2,
            _ => unreachable!("not a right block"),
        })
    })
}

/// Factors of the Jacquet module along the `GL_n` parabolic `P_{t, n-t}`,
/// indexed by `i = 0 ..= min(t, m)`.
pub fn jacquet_factors_left(n: usize, m: usize, t: usize) -> Result<Vec<FiltrationFactor>> {
    let top = validate(n, m, t, None, Side::Left)?;
    Ok((0..=top).map(|i| left_table(n, m, t, i)).collect())
}

/// Factors of the Jacquet module along the lower `GL_m` parabolic, indexed by
/// `i = 0 ..= min(t, n)`.
pub fn jacquet_factors_right(n: usize, m: usize, t: usize) -> Result<Vec<FiltrationFactor>> {
    let top = validate(n, m, t, None, Side::Right)?;
    Ok((0..=top).map(|i| right_table(n, m, t, i)).collect())
}

pub fn jacquet_factors(n: usize, m: usize, t: usize, side: Side) -> Result<Vec<FiltrationFactor>> {
    match side {
        Side::Left => jacquet_factors_left(n, m, t),
        Side::Right => jacquet_factors_right(n, m, t),
    }
}

/// Exponents of the modulus character of the block parabolic with the given
/// block sizes: block `j` gets `Σ_{k>j} n_k - Σ_{k<j} n_k`.
pub fn modulus_exponents(partition: &[usize]) -> Vec<Rat> {
    let total: i64 = partition.iter().map(|&x| x as i64).sum();
    let mut before = 0i64;
    partition
        .iter()
        .map(|&size| {
            let after = total - before - size as i64;
            let e = Rat::int(after - before);
            before += size as i64;
            e
        })
        .collect()
}

/// Recomputes a factor's exponent table from the central character of the
/// Weil representation and the three modulus normalizations.
pub fn derive_xi(n: usize, m: usize, t: usize, i: usize, side: Side) -> Result<FiltrationFactor> {
    validate(n, m, t, Some(i), side)?;
    let half_mod = |parts: &[usize]| -> Vec<Rat> {
        modulus_exponents(parts).into_iter().map(Rat::halve).collect()
    };
    let (mi, ti, ni) = (m as i64, t as i64, n as i64);
    let factor = match side {
        Side::Left => {
            // ν(g)^m on the t-block, ν(g')^{-t}, minus δ^{1/2} of P_{t-i,i}, P_{t,n-t}, P'_{i,m-i}
            let inner_t = half_mod(&[t - i, i]);
            let outer = half_mod(&[t, n - t]);
            let prime = half_mod(&[i, m - i]);
            make_factor(side, (n, m, t, i), |label| match label {
                BlockLabel::TMinusI => Rat::int(mi) - inner_t[0] - outer[0],
                BlockLabel::I => Rat::int(mi) - inner_t[1] - outer[0],
                BlockLabel::NMinusT => -outer[1],
                BlockLabel::PrimeI => Rat::int(-ti) - prime[0],
                BlockLabel::PrimeMMinusI => Rat::int(-ti) - prime[1],
                _ => unreachable!("not a left block"),
            })
        }
        Side::Right => {
            // ν(g)^t, ν(g')^{-n} on the t-block; the lower parabolic P̄'_{m-t,t}
            // contributes +δ^{1/2}, then P_{n-i,i} and P'_{i,t-i} as usual
            let outer = half_mod(&[t, m - t]);
            let gl_n = half_mod(&[n - i, i]);
            let inner_t = half_mod(&[i, t - i]);
            make_factor(side, (n, m, t, i), |label| match label {
                BlockLabel::NMinusI => Rat::int(ti) - gl_n[0],
                BlockLabel::I => Rat::int(ti) - gl_n[1],
                BlockLabel::PrimeI => Rat::int(-ni) + outer[0] - inner_t[0],
                BlockLabel::PrimeTMinusI => Rat::int(-ni) + outer[0] - inner_t[1],
                BlockLabel::PrimeMMinusT => outer[1],
                _ => unreachable!("not a right block"),
            })
        }
    };
    Ok(factor)
}

/// One graded piece of the rank filtration: rank-`k` matrices, induced from
/// the lower parabolic `P̄_{n-k,k}` and `P'_{m-k,k}` with the regular
/// representation of `G_k × G'_k` on the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RankFactor {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub left_parabolic: (usize, usize),
    pub left_lower: bool,
    pub right_parabolic: (usize, usize),
}

pub fn rank_factors(n: usize, m: usize) -> Vec<RankFactor> {
    (0..=n.min(m))
        .map(|k| RankFactor {
            n,
            m,
            k,
            left_parabolic: (n - k, k),
            left_lower: true,
            right_parabolic: (m - k, k),
        })
        .collect()
}

/// Indices `i` for which the character on the `G_{ra-i}` block of the left
/// factor can have cuspidal support `{χ, ..., χ}`.
pub fn lima_classifier_left(n: usize, m: usize, r: usize, a: usize, chi: &Point) -> Result<BTreeSet<usize>> {
    let ra = r * a;
    if ra > n {
        return Err(Error::IndexOutOfRange(format!("ra={ra} exceeds n={n}")));
    }
    let mut out = BTreeSet::from([ra]);
    let upper = Rat::half(2 * m as i64 - n as i64 + 1);
    if ra >= 1 && chi.cusp.is_unr() && chi.cusp.deg() == 1 && chi.at == upper {
        out.insert(ra - 1);
    }
    Ok(out)
}

/// Right-hand analogue: indices of factors whose `G'_{t-i}` character,
/// `t = r(b-a)`, can have support `{ν^{(m-n)/2} χ̃, ...}`.
pub fn lima_classifier_right(
    n: usize,
    m: usize,
    r: usize,
    a: usize,
    b: usize,
    chi: &Point,
) -> Result<BTreeSet<usize>> {
    if a > b || r * b > m {
        return Err(Error::IndexOutOfRange(format!("need a <= b and rb <= m (r={r}, a={a}, b={b}, m={m})")));
    }
    let t = r * (b - a);
    let mut out = BTreeSet::from([t]);
    let lower = Rat::half(n as i64 + 1);
    if t >= 1 && chi.cusp.is_unr() && chi.cusp.deg() == 1 && chi.at == lower {
        out.insert(t - 1);
    }
    Ok(out)
}
