use std::sync::Arc;

use crate::error::{Error, Result};

use super::field::Field;
use super::monomial::MonomialOrder;

/// Resource guards applied by every potentially expensive computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    pub max_basis: usize,
    pub max_degree: u32,
    pub max_terms: usize,
    /// Cap on exhaustive candidate counts (point and morphism enumeration).
    pub max_enumeration: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { max_basis: 10_000, max_degree: 64, max_terms: 100_000, max_enumeration: 20_000_000 }
    }
}

impl Guards {
    /// Defaults overridden by `AFFPI0_MAX_BASIS`, `AFFPI0_MAX_DEGREE` and
    /// `AFFPI0_MAX_TERMS` when set.
    pub fn from_env() -> Result<Self> {
        let mut g = Guards::default();
        fn read<T: std::str::FromStr>(name: &str) -> Result<Option<T>> {
            match std::env::var(name) {
                Ok(v) => v
                    .trim()
                    .parse::<T>()
                    .map(Some)
                    .map_err(|_| Error::invalid(format!("{name} must be a positive integer"))),
                Err(_) => Ok(None),
            }
        }
        if let Some(v) = read::<usize>("AFFPI0_MAX_BASIS")? {
            g.max_basis = v;
        }
        if let Some(v) = read::<u32>("AFFPI0_MAX_DEGREE")? {
            g.max_degree = v;
        }
        if let Some(v) = read::<usize>("AFFPI0_MAX_TERMS")? {
            g.max_terms = v;
        }
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_basis == 0 || self.max_degree == 0 || self.max_terms == 0 || self.max_enumeration == 0 {
            return Err(Error::invalid("resource guards must be positive"));
        }
        Ok(())
    }
}

/// A polynomial ring `F[vars]` with a fixed monomial order.
#[derive(Debug, Clone)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
    guards: Guards,
}

pub type RingRef = Arc<PolyRing>;

impl PartialEq for PolyRing {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.order == o.order && self.vars == o.vars
    }
}

impl Eq for PolyRing {}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>, order: MonomialOrder) -> Result<RingRef> {
        Self::with_guards(field, vars, order, Guards::default())
    }

    pub fn with_guards(field: Field, vars: Vec<String>, order: MonomialOrder, guards: Guards) -> Result<RingRef> {
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::invalid(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::invalid(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Block(k) = order {
            if k > vars.len() {
                return Err(Error::invalid("block size exceeds arity"));
            }
        }
        guards.validate()?;
        Ok(Arc::new(PolyRing { field, vars, order, guards }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn guards(&self) -> Guards {
        self.guards
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        Arc::new(PolyRing { order, ..self.clone() })
    }

    pub fn with_vars(&self, vars: Vec<String>) -> Result<RingRef> {
        Self::with_guards(self.field, vars, self.order, self.guards)
    }

    pub fn with_guards_replaced(&self, guards: Guards) -> RingRef {
        Arc::new(PolyRing { guards, ..self.clone() })
    }

    pub fn same(a: &RingRef, b: &RingRef) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    pub fn check_same(a: &RingRef, b: &RingRef) -> Result<()> {
        if Self::same(a, b) {
            Ok(())
        } else if a.field != b.field {
            Err(Error::FieldMismatch(format!("{} vs {}", a.field, b.field)))
        } else {
            Err(Error::RingMismatch(format!("[{}] vs [{}]", a.vars.join(","), b.vars.join(","))))
        }
    }
}

/// Picks `base` if unused, otherwise `base0`, `base1`, ...
pub fn fresh_name(base: &str, taken: &[String]) -> String {
    if !taken.iter().any(|t| t == base) {
        return base.to_string();
    }
    (0..)
        .map(|i| format!("{base}{i}"))
        .find(|c| !taken.iter().any(|t| t == c))
        .expect("infinitely many candidates")
}
