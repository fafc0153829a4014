//! Dirichlet characters in the Conrey labeling.
//!
//! `(Z/q)^x` is split by CRT into prime-power pieces: cyclic with a fixed
//! primitive root for odd p, and `<-1> x <5>` for powers of two. A character
//! is stored by its label `m` and evaluated on demand as an exact root of
//! unity.

use crate::error::{Error, Result};
use num_complex::Complex64;
use num_integer::Integer;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// `exp(2 pi i num/den)` in lowest terms; `den >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    pub num: u64,
    pub den: u64,
}

impl RootOfUnity {
    pub fn new(num: u64, den: u64) -> Self {
        let num = num % den;
        let g = num.gcd(&den).max(1);
        RootOfUnity { num: num / g, den: den / g }
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn to_complex(self) -> Complex64 {
        // Exact for the quarter turns so that real characters stay real.
        match (self.num, self.den) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, 2.0 * PI * self.num as f64 / self.den as f64),
        }
    }

    pub fn conj(self) -> Self {
        RootOfUnity::new(self.den - self.num, self.den)
    }
}

impl std::ops::Mul for RootOfUnity {
    type Output = Self;

    fn mul(self, o: RootOfUnity) -> Self {
        let den = self.den.lcm(&o.den);
        RootOfUnity::new(self.num * (den / self.den) + o.num * (den / o.den), den)
    }
}

#[derive(Debug)]
enum Piece {
    /// Odd prime power with primitive root `g`; `dlog[n]` for `n < p^e`.
    Odd { p: u64, e: u32, pe: u64, phi: u64, dlog: Vec<u32> },
    /// `2^e`: `n = (-1)^eps 5^b`; table of `(eps, b)`.
    Two { e: u32, pe: u64, table: Vec<(u8, u32)> },
}

impl Piece {
    fn modulus(&self) -> u64 {
        match self {
            Piece::Odd { pe, .. } | Piece::Two { pe, .. } => *pe,
        }
    }
}

/// Shared structure of `(Z/q)^x`.
#[derive(Debug)]
struct Group {
    q: u64,
    pieces: Vec<Piece>,
    exponent: u64,
}

const NO_LOG: u32 = u32::MAX;

pub(crate) fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn prime_factors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Least primitive root mod `p` that stays primitive mod `p^2`.
fn primitive_root(p: u64) -> u64 {
    let fs = prime_factors(p - 1);
    (2..p).find(|&g| fs.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1) && pow_mod(g, p - 1, p * p) != 1).unwrap_or(1)
}

impl Group {
    fn new(q: u64) -> Group {
        let mut pieces = Vec::new();
        for (p, e) in factor(q) {
            let pe = p.pow(e);
            if p == 2 {
                let mut table = vec![(0u8, NO_LOG); pe as usize];
                if e == 1 {
                    table[1] = (0, 0);
                } else {
                    let half = if e >= 3 { pe / 4 } else { 1 };
                    let mut v = 1u64;
                    for b in 0..half {
                        table[v as usize] = (0, b as u32);
                        table[(pe - v) as usize] = (1, b as u32);
                        v = v * 5 % pe;
                    }
                }
                pieces.push(Piece::Two { e, pe, table });
            } else {
                let g = primitive_root(p);
                let phi = pe / p * (p - 1);
                let mut dlog = vec![NO_LOG; pe as usize];
                let mut v = 1u64;
                for k in 0..phi {
                    dlog[v as usize] = k as u32;
                    v = v * g % pe;
                }
                pieces.push(Piece::Odd { p, e, pe, phi, dlog });
            }
        }
        let mut g = Group { q, pieces, exponent: 1 };
        g.exponent = g.compute_exponent();
        g
    }

    /// Per-piece coordinates of a unit `n`; `None` when `gcd(n, q) > 1`.
    fn coords(&self, n: u64) -> Option<Vec<(u64, u64)>> {
        let mut out = Vec::with_capacity(self.pieces.len());
        for piece in &self.pieces {
            let r = (n % piece.modulus()) as usize;
            match piece {
                Piece::Odd { dlog, .. } => {
                    if dlog[r] == NO_LOG {
                        return None;
                    }
                    out.push((0, dlog[r] as u64));
                }
                Piece::Two { table, .. } => {
                    let (eps, b) = table[r];
                    if b == NO_LOG {
                        return None;
                    }
                    out.push((eps as u64, b as u64));
                }
            }
        }
        Some(out)
    }

    /// Exponent of the group, used as a common denominator.
    fn compute_exponent(&self) -> u64 {
        self.pieces.iter().fold(1u64, |acc, piece| match piece {
            Piece::Odd { phi, .. } => acc.lcm(phi),
            Piece::Two { e, .. } => acc.lcm(&if *e >= 3 { 1u64 << (e - 2) } else { 1 }).lcm(&2),
        })
    }
}

/// One Dirichlet character `chi_q(m, .)`.
#[derive(Clone)]
pub struct Character {
    group: Arc<Group>,
    label: u64,
    coords: Vec<(u64, u64)>,
    conductor: u64,
    parity: u8,
    order: u64,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi_{}({}, .)", self.group.q, self.label)
    }
}

impl PartialEq for Character {
    fn eq(&self, o: &Self) -> bool {
        self.group.q == o.group.q && self.label == o.label
    }
}

impl Character {
    fn build(group: Arc<Group>, label: u64) -> Result<Character> {
        let q = group.q;
        let coords =
            group.coords(label).ok_or_else(|| Error::InvalidInput(format!("label {label} is not a unit mod {q}")))?;
        let mut conductor = 1u64;
        for (piece, &(eps, a)) in group.pieces.iter().zip(&coords) {
            conductor *= match piece {
                Piece::Odd { p, e, .. } => {
                    if a == 0 {
                        1
                    } else {
                        let mut v = 0;
                        let mut x = a;
                        while x % p == 0 && v < e - 1 {
                            x /= p;
                            v += 1;
                        }
                        p.pow(e - v)
                    }
                }
                Piece::Two { e, .. } => {
                    if a == 0 {
                        if eps == 1 {
                            4
                        } else {
                            1
                        }
                    } else {
                        2u64.pow(e - a.trailing_zeros())
                    }
                }
            };
        }
        let mut ch = Character { group, label, coords, conductor, parity: 0, order: 1 };
        let minus_one = ch.root(q.saturating_sub(1).max(1)).unwrap_or(RootOfUnity::one());
        ch.parity = u8::from(minus_one.num != 0);
        let l = ch.group.exponent;
        let g = ch.pieces_exponent_numerators(l).into_iter().fold(0u64, |g, k| g.gcd(&k));
        ch.order = l / g.gcd(&l);
        Ok(ch)
    }

    // Numerators (over the group exponent) of the character on each generator.
    fn pieces_exponent_numerators(&self, l: u64) -> Vec<u64> {
        let mut out = Vec::new();
        for (piece, &(eps, a)) in self.group.pieces.iter().zip(&self.coords) {
            match piece {
                Piece::Odd { phi, .. } => out.push(a * (l / phi) % l),
                Piece::Two { e, .. } => {
                    if *e >= 2 {
                        out.push(eps * (l / 2) % l);
                    }
                    if *e >= 3 {
                        out.push(a * (l >> (e - 2)) % l);
                    }
                }
            }
        }
        out
    }

    pub fn modulus(&self) -> u64 {
        self.group.q
    }

    pub fn label(&self) -> u64 {
        self.label
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.group.q
    }

    pub fn is_principal(&self) -> bool {
        self.conductor == 1
    }

    /// 0 for even characters, 1 for odd ones.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `chi(n)` as a root of unity, `None` when `gcd(n, q) > 1`.
    pub fn root(&self, n: u64) -> Option<RootOfUnity> {
        let l = self.group.exponent;
        let mut k = 0u64;
        for (piece, &(em, am)) in self.group.pieces.iter().zip(&self.coords) {
            let r = (n % piece.modulus()) as usize;
            match piece {
                Piece::Odd { phi, dlog, .. } => {
                    let bn = dlog[r];
                    if bn == NO_LOG {
                        return None;
                    }
                    k += (am * bn as u64 % phi) * (l / phi);
                }
                Piece::Two { e, table, .. } => {
                    let (en, bn) = table[r];
                    if bn == NO_LOG {
                        return None;
                    }
                    if *e >= 2 {
                        k += em * en as u64 * (l / 2);
                    }
                    if *e >= 3 {
                        let m = 1u64 << (e - 2);
                        k += (am * bn as u64 % m) * (l / m);
                    }
                }
            }
            k %= l;
        }
        Some(RootOfUnity::new(k, l))
    }

    pub fn value(&self, n: u64) -> Complex64 {
        self.root(n).map_or(Complex64::new(0.0, 0.0), RootOfUnity::to_complex)
    }

    /// Values at residues `1..=q`.
    pub fn values(&self) -> Vec<Complex64> {
        (1..=self.group.q).map(|n| self.value(n)).collect()
    }

    pub fn conj(&self) -> Character {
        let q = self.group.q;
        if q == 1 {
            return self.clone();
        }
        let inv = mod_inverse(self.label, q);
        Character::build(self.group.clone(), inv).expect("inverse of a unit is a unit")
    }

    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> Character {
        if self.is_primitive() {
            return self.clone();
        }
        let qs = self.conductor;
        let group = Arc::new(Group::new(qs));
        for m in 1..=qs {
            if m.gcd(&qs) != 1 {
                continue;
            }
            let cand = Character::build(group.clone(), m).expect("unit");
            if self.full_match(&cand) {
                return cand;
            }
        }
        unreachable!("every character is induced by a primitive one")
    }

    fn full_match(&self, cand: &Character) -> bool {
        let q = self.group.q;
        let qs = cand.group.q;
        (1..=q).filter(|&n| n.gcd(&q) == 1).all(|n| cand.root(n % qs) == self.root(n))
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let e = num_integer::Integer::extended_gcd(&(a as i64), &(m as i64));
    e.x.rem_euclid(m as i64) as u64
}

/// All `phi(q)` characters mod `q`, ordered by label.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub modulus: u64,
    pub characters: Vec<Character>,
}

pub fn character_table(q: u64) -> Result<CharacterTable> {
    if q == 0 || q > 10_000 {
        return Err(Error::InvalidInput(format!("modulus {q} outside 1..=10000")));
    }
    let group = Arc::new(Group::new(q));
    let characters = (1..=q)
        .filter(|&m| m.gcd(&q) == 1 || q == 1)
        .map(|m| Character::build(group.clone(), m))
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterTable { modulus: q, characters })
}

/// The character with Conrey label `m` mod `q`.
pub fn character(q: u64, m: u64) -> Result<Character> {
    if q == 0 || q > 10_000 {
        return Err(Error::InvalidInput(format!("modulus {q} outside 1..=10000")));
    }
    if m.gcd(&q) != 1 && q != 1 {
        return Err(Error::InvalidInput(format!("label {m} is not coprime to {q}")));
    }
    let label = if q == 1 { 1 } else { m % q };
    Character::build(Arc::new(Group::new(q)), label)
}

/// `tau(chi) = sum_a chi(a) e(a/q)` for primitive `chi`.
pub fn gauss_sum(chi: &Character) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive { modulus: chi.modulus(), label: chi.label() });
    }
    let q = chi.modulus();
    if q == 1 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        if let Some(r) = chi.root(a) {
            acc += (r * RootOfUnity::new(a, q)).to_complex();
        }
    }
    Ok(acc)
}

/// `W(chi) = tau(chi) / (i^a sqrt q)`.
pub fn root_number(chi: &Character) -> Result<Complex64> {
    let tau = gauss_sum(chi)?;
    let ia = if chi.parity() == 1 { Complex64::new(0.0, 1.0) } else { Complex64::new(1.0, 0.0) };
    let w = tau / (ia * (chi.modulus() as f64).sqrt());
    Ok(w / w.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_conductor(chi: &Character) -> u64 {
        let q = chi.modulus();
        (1..=q)
            .filter(|d| q.is_multiple_of(*d))
            .find(|&d| (1..=q).filter(|&n| n.gcd(&q) == 1 && n % d == 1 % d).all(|n| chi.root(n).unwrap().num == 0))
            .unwrap()
    }

    /// Exact test that `sum_n chi(n) conj(chi')(n)` is `phi(q)` or `0`, on
    /// numerators over the common denominator `l`: the values of a nontrivial
    /// character are equidistributed over its image.
    fn orthogonality_sum_is(a: &[Option<u64>], b: &[Option<u64>], l: u64, expect_trivial: bool) -> bool {
        let mut counts = vec![0u64; l as usize];
        let mut units = 0;
        for (x, y) in a.iter().zip(b) {
            if let (Some(x), Some(y)) = (x, y) {
                counts[((x + l - y) % l) as usize] += 1;
                units += 1;
            }
        }
        if expect_trivial {
            return counts[0] == units;
        }
        let hit: Vec<usize> = (0..l as usize).filter(|&k| counts[k] > 0).collect();
        let d = hit.len() as u64;
        d > 1 && hit.iter().all(|&k| (k as u64 * d).is_multiple_of(l)) && hit.iter().all(|&k| counts[k] * d == units)
    }

    #[test]
    fn table_sizes_and_conductors() {
        let t1 = character_table(1).unwrap();
        assert_eq!(t1.characters.len(), 1);
        assert_eq!(t1.characters[0].conductor(), 1);
        assert_eq!(t1.characters[0].parity(), 0);
        let t5 = character_table(5).unwrap();
        assert_eq!(t5.characters.len(), 4);
        for c in &t5.characters {
            assert_eq!(c.conductor(), if c.label() == 1 { 1 } else { 5 });
        }
        let t8 = character_table(8).unwrap();
        assert_eq!(t8.characters.len(), 4);
        assert_eq!(t8.characters.iter().filter(|c| c.is_primitive()).count(), 2);
    }

    #[test]
    fn structure_up_to_200() {
        for q in 1..=200u64 {
            let t = character_table(q).unwrap();
            let phi = (1..=q).filter(|&n| n.gcd(&q) == 1).count();
            assert_eq!(t.characters.len(), phi, "q={q}");
            let l = t.characters[0].group.exponent;
            let tables: Vec<Vec<Option<u64>>> = t
                .characters
                .iter()
                .map(|c| (1..=q).map(|n| c.root(n).map(|r| r.num * (l / r.den))).collect())
                .collect();
            for (i, a) in t.characters.iter().enumerate() {
                assert_eq!(a.conductor(), brute_conductor(a), "{a:?}");
                assert_eq!(q % a.conductor(), 0);
                for (j, b) in t.characters.iter().enumerate().skip(i) {
                    assert!(orthogonality_sum_is(&tables[i], &tables[j], l, a == b), "{a:?} {b:?}");
                }
                if q <= 60 {
                    for m in 1..=q {
                        for n in 1..=q {
                            if (m * n).gcd(&q) == 1 {
                                assert_eq!(a.root(m * n).unwrap(), a.root(m).unwrap() * a.root(n).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn conjugate_is_inverse() {
        let t = character_table(63).unwrap();
        for c in &t.characters {
            let d = c.conj();
            for n in 1..=63 {
                assert_eq!(c.root(n).map(RootOfUnity::conj), d.root(n));
            }
            assert_eq!(d.conj(), *c);
        }
    }

    #[test]
    fn gauss_sums() {
        let chi3 = character(3, 2).unwrap();
        let tau = gauss_sum(&chi3).unwrap();
        assert!((tau - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-10);
        let chi4 = character(4, 3).unwrap();
        assert!((gauss_sum(&chi4).unwrap().norm() - 2.0).abs() < 1e-12);
        assert!((root_number(&chi3).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(matches!(gauss_sum(&character(9, 8).unwrap()), Err(Error::NotPrimitive { .. })));
        for c in character_table(35).unwrap().characters.iter().filter(|c| c.is_primitive()) {
            assert!((gauss_sum(c).unwrap().norm() - 35f64.sqrt()).abs() < 1e-11);
        }
    }

    #[test]
    fn primitive_inducing_character() {
        for q in [12u64, 20, 45, 64] {
            for c in character_table(q).unwrap().characters {
                let p = c.primitive();
                assert!(p.is_primitive());
                assert_eq!(p.modulus(), c.conductor());
            }
        }
    }
}
