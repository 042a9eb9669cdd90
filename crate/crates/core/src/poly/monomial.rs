use std::cmp::Ordering;
use std::fmt;

/// Exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
    deg: u32,
}

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial { exps: vec![0; arity], deg: 0 }
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[i] = 1;
        Monomial { exps, deg: 1 }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Monomial { exps, deg }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), o.arity());
        Monomial {
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect(),
            deg: self.deg + o.deg,
        }
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self | o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        if !self.divides(o) {
            return None;
        }
        Some(Monomial {
            exps: o.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
            deg: o.deg - self.deg,
        })
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial::from_exps(self.exps.iter().zip(&o.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True when every variable outside `range` has exponent zero.
    pub fn supported_in(&self, range: std::ops::Range<usize>) -> bool {
        self.exps.iter().enumerate().all(|(i, e)| *e == 0 || range.contains(&i))
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    /// Restricts to the variables in `range`, producing a shorter monomial.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Monomial {
        Monomial::from_exps(self.exps[range].to_vec())
    }

    /// Concatenates exponent vectors.
    pub fn concat(&self, o: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend_from_slice(&o.exps);
        Monomial { exps, deg: self.deg + o.deg }
    }

    /// Compact textual form used in generated variable names: `e2_0_1`.
    pub fn compact(&self) -> String {
        let parts: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        format!("e{}", parts.join("_"))
    }
}

/// Supported monomial orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Elimination order: the first `k` variables form a block compared
    /// first (degrevlex), ties broken by degrevlex on the rest.
    Block(usize),
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return if a[i] < b[i] { Ordering::Greater } else { Ordering::Less };
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => {
                match a.deg.cmp(&b.deg) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for i in (0..a.exps.len()).rev() {
                    if a.exps[i] != b.exps[i] {
                        return if a.exps[i] < b.exps[i] { Ordering::Greater } else { Ordering::Less };
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block(k) => {
                let k = (*k).min(a.exps.len());
                match degrevlex(&a.exps[..k], &b.exps[..k]) {
                    Ordering::Equal => degrevlex(&a.exps[k..], &b.exps[k..]),
                    o => o,
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::DegRevLex => "degrevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Block(k) => format!("block({k})"),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// All monomials in `arity` variables of total degree exactly `d`, in
/// ascending degrevlex order.
pub fn monomials_of_degree(arity: usize, d: u32) -> Vec<Monomial> {
    fn rec(arity: usize, d: u32) -> Vec<Vec<u32>> {
        if arity == 0 {
            return if d == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for e in 0..=d {
            for mut rest in rec(arity - 1, d - e) {
                rest.insert(0, e);
                out.push(rest);
            }
        }
        out
    }
    let mut out: Vec<Monomial> = rec(arity, d).into_iter().map(Monomial::from_exps).collect();
    out.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(a, b));
    out
}
