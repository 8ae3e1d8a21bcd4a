//! Character families of `GL2(q)`, `SL2(q)` and the Suzuki groups, with
//! their reduced value sets on semisimple elements.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::arith::{exact_sqrt, gcd, prime_power};
use crate::cyclonum::{CyclotomicInteger, RootOfUnity};
use crate::error::{Error, Result};
use crate::ffield::gauss_sum;
use crate::vansum::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    GL2,
    SL2,
    Suzuki,
}

impl GroupKind {
    pub fn name(&self) -> &'static str {
        match self {
            GroupKind::GL2 => "GL2",
            GroupKind::SL2 => "SL2",
            GroupKind::Suzuki => "Suzuki",
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl2" => Ok(GroupKind::GL2),
            "sl2" => Ok(GroupKind::SL2),
            "suzuki" | "sz" | "2b2" => Ok(GroupKind::Suzuki),
            _ => Err(Error::InvalidCharacter(format!("unknown group {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Linear,
    Steinberg,
    X,
    Y,
    Xp,
    Yp,
    SplitXp,
    SplitYp,
    SuUnipotent,
    SuX,
    SuY,
    SuZ,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::Linear,
        Family::Steinberg,
        Family::X,
        Family::Y,
        Family::Xp,
        Family::Yp,
        Family::SplitXp,
        Family::SplitYp,
        Family::SuUnipotent,
        Family::SuX,
        Family::SuY,
        Family::SuZ,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Linear => "Linear",
            Family::Steinberg => "Steinberg",
            Family::X => "X",
            Family::Y => "Y",
            Family::Xp => "Xp",
            Family::Yp => "Yp",
            Family::SplitXp => "SplitXp",
            Family::SplitYp => "SplitYp",
            Family::SuUnipotent => "SuUnipotent",
            Family::SuX => "SuX",
            Family::SuY => "SuY",
            Family::SuZ => "SuZ",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidCharacter(format!("unknown family {s:?}")))
    }
}

/// An irreducible character, named by group, `q`, family and parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterId {
    pub group: GroupKind,
    pub q: u64,
    pub family: Family,
    pub params: Vec<i64>,
}

impl CharacterId {
    pub fn new(group: GroupKind, q: u64, family: Family, params: Vec<i64>) -> Self {
        Self {
            group,
            q,
            family,
            params,
        }
    }

    /// Character degree, as a function of `q` (and `r = sqrt(2q)` for Suzuki).
    pub fn degree_formula(&self) -> &'static str {
        use Family::*;
        match (self.group, self.family) {
            (GroupKind::Suzuki, Steinberg) if self.q == 2 => "4",
            (_, Linear) => "1",
            (_, Steinberg) => "q",
            (_, X) | (_, Xp) => "q+1",
            (_, Y) | (_, Yp) => "q-1",
            (_, SplitXp) => "(q+1)/2",
            (_, SplitYp) => "(q-1)/2",
            (_, SuUnipotent) => match self.params.first() {
                Some(0) => "1",
                Some(1) => "q^2",
                _ => "r(q-1)/2",
            },
            (_, SuX) => "q^2+1",
            (_, SuY) => "(q-1)(q-r+1)",
            (_, SuZ) => "(q-1)(q+r+1)",
        }
    }

    pub fn degree(&self) -> u64 {
        use Family::*;
        let q = self.q;
        let r = || exact_sqrt(2 * q).unwrap_or(0);
        match (self.group, self.family) {
            (GroupKind::Suzuki, Steinberg) if q == 2 => 4,
            (_, Linear) => 1,
            (_, Steinberg) => q,
            (_, X) | (_, Xp) => q + 1,
            (_, Y) | (_, Yp) => q - 1,
            (_, SplitXp) => q.div_ceil(2),
            (_, SplitYp) => (q - 1) / 2,
            (_, SuUnipotent) => match self.params.first() {
                Some(0) => 1,
                Some(1) => q * q,
                _ => r() * (q - 1) / 2,
            },
            (_, SuX) => q * q + 1,
            (_, SuY) => (q - 1) * (q - r() + 1),
            (_, SuZ) => (q - 1) * (q + r() + 1),
        }
    }
}

impl fmt::Display for CharacterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        write!(
            f,
            "{}(q={}) {}({})",
            self.group,
            self.q,
            self.family,
            params.join(",")
        )
    }
}

/// Which printed parameter a witness refers to, in the order the parts of a
/// value set are printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessKind {
    /// The exponent `a` of the cyclic part.
    A,
    /// The pair `(c, d)` of an `X` value.
    Pair,
    /// The exponent `e` of a `Y` value.
    E,
    /// The exponent `b`.
    B,
    /// The exponent `c` of a Suzuki `Z` value.
    C,
    /// A fixed generator of the field of values.
    Gen,
    /// The identity element, for characters with no printed semisimple value.
    Identity,
}

/// A parameter tuple naming a group element at which a value is attained.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Witness {
    pub kind: WitnessKind,
    pub params: Vec<i64>,
}

impl Witness {
    pub fn new(kind: WitnessKind, params: Vec<i64>) -> Self {
        Self { kind, params }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        match self.kind {
            WitnessKind::A => write!(f, "a={}", p[0]),
            WitnessKind::Pair => write!(f, "(c,d)=({},{})", p[0], p[1]),
            WitnessKind::E => write!(f, "e={}", p[0]),
            WitnessKind::B => write!(f, "b={}", p[0]),
            WitnessKind::C => write!(f, "c={}", p[0]),
            WitnessKind::Gen => f.write_str("gen"),
            WitnessKind::Identity => f.write_str("identity"),
        }
    }
}

/// A distinct value with every witness attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueEntry {
    pub value: CyclotomicInteger,
    /// Sorted; the first one is the least.
    pub witnesses: Vec<Witness>,
    /// The value as written, a signed sum of roots, before simplification.
    pub written_terms: Vec<(Sign, RootOfUnity)>,
}

impl ValueEntry {
    pub fn least_witness(&self) -> &Witness {
        &self.witnesses[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedValueSet {
    pub character: CharacterId,
    pub entries: Vec<ValueEntry>,
}

impl ReducedValueSet {
    pub fn values(&self) -> Vec<CyclotomicInteger> {
        self.entries.iter().map(|e| e.value.clone()).collect()
    }
}

/// Least representative of each orbit of `x -> t x` on `Z/m`, ascending.
pub fn orbit_reps(m: u64, t: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if gcd(t % m, m) != 1 {
        return Err(Error::NotAUnit {
            s: t as i64,
            modulus: m,
        });
    }
    let mut seen = vec![false; m as usize];
    let mut reps = Vec::new();
    for x in 0..m {
        if seen[x as usize] {
            continue;
        }
        reps.push(x);
        let mut y = x;
        while !seen[y as usize] {
            seen[y as usize] = true;
            y = ((y as u128 * t as u128) % m as u128) as u64;
        }
    }
    Ok(reps)
}

/// `sqrt(2q)` for a Suzuki parameter `q = 2^{2n+1}`.
pub fn suzuki_r(q: u64) -> Result<u64> {
    match prime_power(q) {
        Some((2, f)) if f % 2 == 1 => Ok(exact_sqrt(2 * q).expect("2q is an even power of 2")),
        _ => Err(Error::InvalidQ { group: "Suzuki", q }),
    }
}

fn check_q(group: GroupKind, q: u64) -> Result<()> {
    match group {
        GroupKind::GL2 | GroupKind::SL2 => {
            prime_power(q).ok_or(Error::NotPrimePower(q))?;
            Ok(())
        }
        GroupKind::Suzuki => suzuki_r(q).map(|_| ()),
    }
}

fn nonzero_reps(m: u64, t: u64) -> Vec<i64> {
    orbit_reps(m, t)
        .expect("q is a unit")
        .into_iter()
        .filter(|&x| x != 0)
        .map(|x| x as i64)
        .collect()
}

/// Every irreducible character of the group, family by family.
pub fn enumerate(group: GroupKind, q: u64) -> Result<Vec<CharacterId>> {
    check_q(group, q)?;
    let qi = q as i64;
    let mut out = Vec::new();
    let mut push = |family, params| out.push(CharacterId::new(group, q, family, params));
    match group {
        GroupKind::GL2 => {
            for k in 0..=qi - 2 {
                push(Family::Linear, vec![k]);
            }
            for k in 0..=qi - 2 {
                push(Family::Steinberg, vec![k]);
            }
            for n in 0..=qi - 2 {
                for m in 0..n {
                    push(Family::X, vec![m, n]);
                }
            }
            for n in nonzero_reps(q * q - 1, q) {
                if n % (qi + 1) != 0 {
                    push(Family::Y, vec![n]);
                }
            }
        }
        GroupKind::SL2 => {
            push(Family::Linear, vec![0]);
            push(Family::Steinberg, vec![0]);
            for k in 1..=(qi - 2) / 2 {
                push(Family::Xp, vec![k]);
            }
            for n in 1..=qi / 2 {
                push(Family::Yp, vec![n]);
            }
            if q % 2 == 1 {
                for j in 1..=2 {
                    push(Family::SplitXp, vec![(qi - 1) / 2, j]);
                }
                for j in 1..=2 {
                    push(Family::SplitYp, vec![(qi + 1) / 2, j]);
                }
            }
        }
        GroupKind::Suzuki if q == 2 => {
            for j in 0..4 {
                push(Family::Linear, vec![j]);
            }
            push(Family::Steinberg, vec![0]);
        }
        GroupKind::Suzuki => {
            let r = suzuki_r(q)? as i64;
            for j in 0..4 {
                push(Family::SuUnipotent, vec![j]);
            }
            for n in 1..=(qi - 2) / 2 {
                push(Family::SuX, vec![n]);
            }
            for m in nonzero_reps((qi + r + 1) as u64, q) {
                push(Family::SuY, vec![m]);
            }
            for k in nonzero_reps((qi - r + 1) as u64, q) {
                push(Family::SuZ, vec![k]);
            }
        }
    }
    Ok(out)
}

fn is_member(c: &CharacterId) -> Result<bool> {
    Ok(enumerate(c.group, c.q)?.contains(c))
}

/// Collects values, merging equal ones and keeping every witness.
struct Builder {
    index: HashMap<CyclotomicInteger, usize>,
    entries: Vec<ValueEntry>,
}

impl Builder {
    fn new() -> Self {
        Self {
            index: HashMap::new(),
            entries: Vec::new(),
        }
    }

    /// Adds the signed sum of `zeta_modulus^e` over `terms`.
    fn push(&mut self, witness: Witness, modulus: u64, terms: &[(Sign, i64)]) {
        let value = CyclotomicInteger::make(
            modulus,
            terms
                .iter()
                .map(|&(s, e)| (e, if s == Sign::Plus { 1 } else { -1 })),
        )
        .expect("positive modulus");
        let written = terms
            .iter()
            .map(|&(s, e)| (s, RootOfUnity::new(modulus, e).expect("positive modulus")))
            .collect();
        self.push_value(witness, value, written);
    }

    fn push_value(
        &mut self,
        witness: Witness,
        value: CyclotomicInteger,
        written_terms: Vec<(Sign, RootOfUnity)>,
    ) {
        match self.index.get(&value) {
            Some(&i) => self.entries[i].witnesses.push(witness),
            None => {
                self.index.insert(value.clone(), self.entries.len());
                self.entries.push(ValueEntry {
                    value,
                    witnesses: vec![witness],
                    written_terms,
                });
            }
        }
    }

    fn finish(mut self, character: &CharacterId) -> ReducedValueSet {
        if self.entries.is_empty() {
            let degree = character.degree();
            self.entries.push(ValueEntry {
                value: CyclotomicInteger::from_integer(degree),
                witnesses: vec![Witness::new(WitnessKind::Identity, vec![])],
                written_terms: vec![(Sign::Plus, RootOfUnity::one()); degree as usize],
            });
        }
        for e in &mut self.entries {
            e.witnesses.sort();
        }
        ReducedValueSet {
            character: character.clone(),
            entries: self.entries,
        }
    }
}

use Sign::{Minus, Plus};

/// The reduced value set of `c`, every printed parameter included.
pub fn reduced_values(c: &CharacterId) -> Result<ReducedValueSet> {
    if !is_member(c)? {
        return Err(Error::InvalidCharacter(c.to_string()));
    }
    let q = c.q as i64;
    let p = &c.params;
    let mut b = Builder::new();
    let w = |kind, params: &[i64]| Witness::new(kind, params.to_vec());
    match (c.group, c.family) {
        (GroupKind::Suzuki, Family::Linear) => {
            // linear characters of the Frobenius group of order 20
            for a in 0..4 {
                b.push(w(WitnessKind::A, &[a]), 4, &[(Plus, p[0] * a)]);
            }
        }
        (GroupKind::Suzuki, Family::Steinberg) => {
            b.push(w(WitnessKind::A, &[0]), 1, &[(Plus, 0)]);
        }
        (GroupKind::GL2, Family::Linear | Family::Steinberg) => {
            for a in 0..=q - 2 {
                b.push(w(WitnessKind::A, &[a]), (q - 1) as u64, &[(Plus, p[0] * a)]);
            }
        }
        (GroupKind::SL2, Family::Linear | Family::Steinberg) => {
            b.push(w(WitnessKind::A, &[0]), 1, &[(Plus, 0)]);
        }
        (_, Family::X) => {
            let (m, n) = (p[0], p[1]);
            let modulus = (q - 1) as u64;
            for a in 0..=q - 2 {
                b.push(w(WitnessKind::A, &[a]), modulus, &[(Plus, (m + n) * a)]);
            }
            for d in 0..=q - 2 {
                for cc in 0..d {
                    b.push(
                        w(WitnessKind::Pair, &[cc, d]),
                        modulus,
                        &[(Plus, n * cc + m * d), (Plus, n * d + m * cc)],
                    );
                }
            }
        }
        (_, Family::Y) => {
            let n = p[0];
            let modulus = (q * q - 1) as u64;
            for a in 0..=q - 2 {
                b.push(w(WitnessKind::A, &[a]), modulus, &[(Plus, n * a * (q + 1))]);
            }
            for e in nonzero_reps(modulus, c.q) {
                if e % (q + 1) != 0 {
                    b.push(
                        w(WitnessKind::E, &[e]),
                        modulus,
                        &[(Minus, n * e), (Minus, n * e * q)],
                    );
                }
            }
        }
        (_, Family::Xp) => {
            let k = p[0];
            for a in 1..=(q - 2) / 2 {
                b.push(
                    w(WitnessKind::A, &[a]),
                    (q - 1) as u64,
                    &[(Plus, k * a), (Plus, -k * a)],
                );
            }
        }
        (_, Family::Yp) => {
            let n = p[0];
            for bb in 1..=(q - 1) / 2 {
                b.push(
                    w(WitnessKind::B, &[bb]),
                    (q + 1) as u64,
                    &[(Plus, n * bb), (Plus, -n * bb)],
                );
            }
        }
        (_, Family::SplitXp | Family::SplitYp) => {
            let (prime, f) = prime_power(c.q).ok_or(Error::NotPrimePower(c.q))?;
            let g = gauss_sum(prime, f)?;
            let written = g
                .terms()
                .iter()
                .flat_map(|(e, coeff)| {
                    let coeff = coeff.to_i64().expect("Gauss sum coefficients are small");
                    let sign = if coeff < 0 { Minus } else { Plus };
                    let count = coeff.unsigned_abs();
                    let root = RootOfUnity::new(g.modulus(), *e as i64).expect("positive");
                    std::iter::repeat_n((sign, root), count as usize)
                })
                .collect();
            b.push_value(w(WitnessKind::Gen, &[]), g, written);
        }
        (_, Family::SuUnipotent) => {
            if p[0] < 2 {
                b.push(w(WitnessKind::Gen, &[]), 1, &[(Plus, 0)]);
            } else {
                b.push(w(WitnessKind::Gen, &[]), 4, &[(Plus, 1)]);
            }
        }
        (_, Family::SuX) => {
            let n = p[0];
            for a in 1..=q - 2 {
                b.push(
                    w(WitnessKind::A, &[a]),
                    (q - 1) as u64,
                    &[(Plus, n * a), (Plus, -n * a)],
                );
            }
        }
        (_, Family::SuY | Family::SuZ) => {
            let r = suzuki_r(c.q)? as i64;
            let (order, kind) = if c.family == Family::SuY {
                (q + r + 1, WitnessKind::B)
            } else {
                (q - r + 1, WitnessKind::C)
            };
            let m = p[0];
            for t in 1..order {
                let e = m * t % order;
                let eq = e * q % order;
                b.push(
                    w(kind, &[t]),
                    order as u64,
                    &[(Minus, e), (Minus, eq), (Minus, -e), (Minus, -eq)],
                );
            }
        }
    }
    Ok(b.finish(c))
}
