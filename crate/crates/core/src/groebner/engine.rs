//! Dense-exponent Buchberger engine, generic over the coefficient field.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::order::OrderKind;
use crate::error::{Error, Result};
use crate::poly::{mod_inverse, FieldElement};

pub(crate) trait Arith: Copy {
    type E: Clone + PartialEq + Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn import(&self, x: &FieldElement) -> Self::E;
    fn export(&self, x: &Self::E) -> FieldElement;
}

#[derive(Clone, Copy)]
pub(crate) struct Rationals;

impl Arith for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn import(&self, x: &FieldElement) -> BigRational {
        x.clone()
    }
    fn export(&self, x: &BigRational) -> FieldElement {
        x.clone()
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Modular {
    pub p: u64,
}

impl Arith for Modular {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        mod_inverse(*a, self.p)
    }
    fn import(&self, x: &FieldElement) -> u64 {
        x.to_integer().to_u64().expect("canonical representative") % self.p
    }
    fn export(&self, x: &u64) -> FieldElement {
        BigRational::from_integer(BigInt::from(*x))
    }
}

/// Exponent vector indexed by variable rank (index 0 = largest variable).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Mono {
    pub deg: u32,
    pub mask: u64,
    pub exp: Vec<u16>,
}

impl Mono {
    pub fn new(exp: Vec<u16>) -> Self {
        let deg = exp.iter().map(|&e| e as u32).sum();
        let mask = exp
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)));
        Mono { deg, mask, exp }
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg
            && self.mask & !other.mask == 0
            && self.exp.iter().zip(&other.exp).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono {
            deg: self.deg + other.deg,
            mask: self.mask | other.mask,
            exp: self.exp.iter().zip(&other.exp).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other`, assuming divisibility.
    pub fn div(&self, other: &Mono) -> Mono {
        Mono::new(self.exp.iter().zip(&other.exp).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono::new(self.exp.iter().zip(&other.exp).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.exp.iter().zip(&other.exp).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }
}

pub(crate) fn compare(kind: OrderKind, a: &Mono, b: &Mono) -> Ordering {
    match kind {
        OrderKind::Lexicographic => a.exp.cmp(&b.exp),
        OrderKind::DegreeReverseLexicographic => a.deg.cmp(&b.deg).then_with(|| {
            for (x, y) in a.exp.iter().zip(&b.exp).rev() {
                if x != y {
                    // Smaller exponent in the last differing variable wins.
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        }),
    }
}

/// Terms sorted strictly descending under the order.
pub(crate) type IPoly<E> = Vec<(Mono, E)>;

#[derive(Clone, Copy)]
pub(crate) struct Ring<A: Arith> {
    pub arith: A,
    pub kind: OrderKind,
}

impl<A: Arith> Ring<A> {
    fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        compare(self.kind, a, b)
    }

    pub fn sort(&self, p: &mut IPoly<A::E>) {
        p.sort_by(|a, b| self.cmp(&b.0, &a.0));
    }

    pub fn monic(&self, p: &mut IPoly<A::E>) {
        if let Some((_, lc)) = p.first() {
            let inv = self.arith.inv(lc);
            for (_, c) in p.iter_mut() {
                *c = self.arith.mul(c, &inv);
            }
        }
    }

    /// `f - c * m * g`.
    fn sub_scaled(&self, f: &[(Mono, A::E)], c: &A::E, m: &Mono, g: &[(Mono, A::E)]) -> IPoly<A::E> {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let mut scaled: Option<(Mono, A::E)> = None;
        let next_g = |j: usize| -> (Mono, A::E) { (g[j].0.mul(m), self.arith.mul(&g[j].1, c)) };
        while i < f.len() || j < g.len() || scaled.is_some() {
            if scaled.is_none() && j < g.len() {
                scaled = Some(next_g(j));
                j += 1;
            }
            match (f.get(i), scaled.as_ref()) {
                (Some(ft), Some(gt)) => match self.cmp(&ft.0, &gt.0) {
                    Ordering::Greater => {
                        out.push(ft.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        let (gm, gc) = scaled.take().unwrap();
                        out.push((gm, self.arith.sub(&self.arith.zero(), &gc)));
                    }
                    Ordering::Equal => {
                        let (_, gc) = scaled.take().unwrap();
                        let v = self.arith.sub(&ft.1, &gc);
                        if !self.arith.is_zero(&v) {
                            out.push((ft.0.clone(), v));
                        }
                        i += 1;
                    }
                },
                (Some(ft), None) => {
                    out.push(ft.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    let (gm, gc) = scaled.take().unwrap();
                    out.push((gm, self.arith.sub(&self.arith.zero(), &gc)));
                }
                (None, None) => break,
            }
        }
        out
    }

    /// Full reduction of `f` modulo monic polynomials `basis`.
    pub fn reduce(&self, f: &[(Mono, A::E)], basis: &[&IPoly<A::E>]) -> IPoly<A::E> {
        let mut rem: IPoly<A::E> = Vec::new();
        let mut p: IPoly<A::E> = f.to_vec();
        let mut pos = 0;
        while pos < p.len() {
            let (lm, lc) = (&p[pos].0, &p[pos].1);
            match basis.iter().find(|g| g[0].0.divides(lm)) {
                Some(g) => {
                    let m = lm.div(&g[0].0);
                    let c = lc.clone();
                    p = self.sub_scaled(&p[pos + 1..], &c, &m, &g[1..]);
                    pos = 0;
                }
                None => {
                    rem.push(p[pos].clone());
                    pos += 1;
                }
            }
        }
        rem
    }

    pub fn s_poly(&self, f: &IPoly<A::E>, g: &IPoly<A::E>) -> IPoly<A::E> {
        let lcm = f[0].0.lcm(&g[0].0);
        let mf = lcm.div(&f[0].0);
        let mg = lcm.div(&g[0].0);
        // Both inputs are monic, so the leading terms cancel.
        let fm: IPoly<A::E> = f[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
        self.sub_scaled(&fm, &self.arith.one(), &mg, &g[1..])
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

/// Buchberger's algorithm with the Gebauer-Moeller pair update (product
/// and chain criteria) and the normal selection strategy. Returns the
/// reduced Groebner basis, sorted by increasing leading monomial, and the
/// number of pair reductions performed.
pub(crate) fn buchberger<A: Arith>(
    ring: Ring<A>,
    input: Vec<IPoly<A::E>>,
    max_pairs: usize,
) -> Result<(Vec<IPoly<A::E>>, usize)> {
    let mut polys: Vec<IPoly<A::E>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for mut f in input {
        let basis: Vec<&IPoly<A::E>> = active.iter().map(|&k| &polys[k]).collect();
        f = ring.reduce(&f, &basis);
        if f.is_empty() {
            continue;
        }
        ring.monic(&mut f);
        if f[0].0.is_one() {
            return Ok((vec![f], 0));
        }
        polys.push(f);
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    let mut reductions = 0;
    while !pairs.is_empty() {
        let idx = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .deg
                    .cmp(&pb.lcm.deg)
                    .then_with(|| ring.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(idx);
        reductions += 1;
        if reductions > max_pairs {
            return Err(Error::BudgetExceeded { limit: max_pairs });
        }
        let s = ring.s_poly(&polys[pair.i], &polys[pair.j]);
        let basis: Vec<&IPoly<A::E>> = active.iter().map(|&k| &polys[k]).collect();
        let mut h = ring.reduce(&s, &basis);
        if h.is_empty() {
            continue;
        }
        ring.monic(&mut h);
        if h[0].0.is_one() {
            return Ok((vec![h], reductions));
        }
        polys.push(h);
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    // Interreduce: the active set already has minimal leading monomials.
    let mut result: Vec<IPoly<A::E>> = Vec::with_capacity(active.len());
    for (pos, &k) in active.iter().enumerate() {
        let others: Vec<&IPoly<A::E>> = active
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != pos)
            .map(|(_, &o)| &polys[o])
            .collect();
        let head = polys[k][0].clone();
        let mut tail = ring.reduce(&polys[k][1..], &others);
        let mut g = vec![head];
        g.append(&mut tail);
        ring.monic(&mut g);
        result.push(g);
    }
    result.sort_by(|a, b| ring.cmp(&a[0].0, &b[0].0));
    Ok((result, reductions))
}

fn update<E>(
    polys: &[IPoly<E>],
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    h: usize,
) {
    let lh = &polys[h][0].0;
    let candidates: Vec<Pair> = active
        .iter()
        .map(|&g| Pair { i: g, j: h, lcm: lh.lcm(&polys[g][0].0) })
        .collect();

    // Chain criterion among the new pairs. Coprime pairs survive this pass
    // so that they can still shadow others.
    let mut pending: std::collections::VecDeque<Pair> = candidates.into();
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(c) = pending.pop_front() {
        let coprime = polys[c.i][0].0.coprime(lh);
        let shadowed = pending.iter().chain(kept.iter()).any(|d| d.lcm.divides(&c.lcm));
        if coprime || !shadowed {
            kept.push(c);
        }
    }
    // Product criterion.
    kept.retain(|c| !polys[c.i][0].0.coprime(lh));

    // Chain criterion on old pairs.
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && lh.lcm(&polys[p.i][0].0) != p.lcm
            && lh.lcm(&polys[p.j][0].0) != p.lcm)
    });
    pairs.extend(kept);

    active.retain(|&g| !lh.divides(&polys[g][0].0));
    active.push(h);
}
