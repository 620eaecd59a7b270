//! Distance functions used by differential constraints.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Value, ValueKind};

pub const LEVENSHTEIN: &str = "levenshtein";
pub const LEVENSHTEIN_CI: &str = "levenshtein_ci";
pub const ABSDIFF: &str = "absdiff";
pub const EXACT: &str = "exact";

/// Names that user code cannot register.
pub const RESERVED_NAMES: [&str; 4] = [LEVENSHTEIN, LEVENSHTEIN_CI, ABSDIFF, EXACT];

type DistanceImpl = dyn Fn(&Value, &Value) -> f64 + Send + Sync;

/// A named, re-entrant distance over [`Value`]s.
#[derive(Clone)]
pub struct DistanceFn {
    name: String,
    variants: Vec<ValueKind>,
    symmetric: bool,
    func: Arc<DistanceImpl>,
}

impl DistanceFn {
    /// `variants` lists the value kinds both arguments may take.
    pub fn new<F>(name: impl Into<String>, variants: &[ValueKind], func: F) -> Self
    where
        F: Fn(&Value, &Value) -> f64 + Send + Sync + 'static,
    {
        DistanceFn { name: name.into(), variants: variants.to_vec(), symmetric: true, func: Arc::new(func) }
    }

    /// Marks the function as asymmetric, i.e. `d(a, b)` may differ from `d(b, a)`.
    pub fn asymmetric(mut self) -> Self {
        self.symmetric = false;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn applies_to(&self, kind: ValueKind) -> bool {
        self.variants.contains(&kind)
    }

    pub fn variants(&self) -> &[ValueKind] {
        &self.variants
    }

    pub fn eval(&self, a: &Value, b: &Value) -> Result<f64, DistanceError> {
        for v in [a, b] {
            if !self.applies_to(v.kind()) {
                return Err(DistanceError::VariantMismatch { distance: self.name.clone(), kind: v.kind() });
            }
        }
        let d = (self.func)(a, b);
        if d.is_finite() && d >= 0.0 {
            Ok(d)
        } else {
            Err(DistanceError::InvalidResult { distance: self.name.clone(), value: d })
        }
    }
}

impl fmt::Debug for DistanceFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DistanceFn")
            .field("name", &self.name)
            .field("variants", &self.variants)
            .field("symmetric", &self.symmetric)
            .finish()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DistanceError {
    #[error("distance `{0}` is already registered")]
    DuplicateName(String),
    #[error("unknown distance function `{0}`")]
    UnknownDistance(String),
    #[error("distance `{distance}` does not apply to {kind} values")]
    VariantMismatch { distance: String, kind: ValueKind },
    #[error("distance `{distance}` returned {value}; results must be finite and non-negative")]
    InvalidResult { distance: String, value: f64 },
}

/// Name → distance lookup. Built-ins are always present.
#[derive(Debug, Clone)]
pub struct DistanceRegistry {
    fns: BTreeMap<String, DistanceFn>,
}

impl Default for DistanceRegistry {
    fn default() -> Self {
        let mut fns = BTreeMap::new();
        for f in builtins() {
            fns.insert(f.name.clone(), f);
        }
        DistanceRegistry { fns }
    }
}

impl DistanceRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, f: DistanceFn) -> Result<(), DistanceError> {
        if self.fns.contains_key(&f.name) {
            return Err(DistanceError::DuplicateName(f.name));
        }
        self.fns.insert(f.name.clone(), f);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&DistanceFn, DistanceError> {
        self.fns.get(name).ok_or_else(|| DistanceError::UnknownDistance(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.fns.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.fns.keys().map(String::as_str)
    }
}

fn builtins() -> Vec<DistanceFn> {
    use ValueKind::*;
    vec![
        DistanceFn::new(LEVENSHTEIN, &[Text], |a, b| match (a, b) {
            (Value::Text(a), Value::Text(b)) => levenshtein(a, b) as f64,
            _ => unreachable!("variant checked by DistanceFn::eval"),
        }),
        DistanceFn::new(LEVENSHTEIN_CI, &[Text], |a, b| match (a, b) {
            (Value::Text(a), Value::Text(b)) => levenshtein(&a.to_lowercase(), &b.to_lowercase()) as f64,
            _ => unreachable!("variant checked by DistanceFn::eval"),
        }),
        DistanceFn::new(ABSDIFF, &[Integer, Real], |a, b| absdiff(a, b).expect("numeric")),
        DistanceFn::new(EXACT, &[Text, Integer, Real, Boolean], |a, b| if a == b { 0.0 } else { 1.0 }),
    ]
}

/// Edit distance over Unicode scalar values (insert, delete, substitute; unit cost).
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let subst = prev[j] + usize::from(ca != cb);
            cur[j + 1] = subst.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// `|a - b|`; integer pairs are subtracted exactly before conversion.
pub fn absdiff(a: &Value, b: &Value) -> Option<f64> {
    match (a, b) {
        (Value::Integer(x), Value::Integer(y)) => Some((*x as i128 - *y as i128).unsigned_abs() as f64),
        _ => Some((a.as_f64()? - b.as_f64()?).abs()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_registered() {
        let r = DistanceRegistry::new();
        for name in RESERVED_NAMES {
            assert!(r.contains(name), "{name}");
        }
    }

    #[test]
    fn duplicate_registration_fails() {
        let mut r = DistanceRegistry::new();
        let f = DistanceFn::new("len", &[ValueKind::Text], |a, b| {
            (a.as_text().unwrap().len() as f64 - b.as_text().unwrap().len() as f64).abs()
        });
        r.register(f.clone()).unwrap();
        assert!(r.get("len").is_ok());
        assert_eq!(r.register(f), Err(DistanceError::DuplicateName("len".into())));
        let shadow = DistanceFn::new(LEVENSHTEIN, &[ValueKind::Text], |_, _| 0.0);
        assert_eq!(r.register(shadow), Err(DistanceError::DuplicateName(LEVENSHTEIN.into())));
    }

    #[test]
    fn levenshtein_examples() {
        assert_eq!(levenshtein("kitten", "sitting"), 3);
        assert_eq!(levenshtein("central high", "central high."), 1);
        assert_eq!(levenshtein("", "abc"), 3);
        assert_eq!(levenshtein("héllo", "hello"), 1);
    }

    #[test]
    fn case_folding_variant() {
        let r = DistanceRegistry::new();
        let (a, b) = (Value::from("Ann"), Value::from("ann"));
        assert_eq!(r.get(LEVENSHTEIN).unwrap().eval(&a, &b), Ok(1.0));
        assert_eq!(r.get(LEVENSHTEIN_CI).unwrap().eval(&a, &b), Ok(0.0));
    }

    #[test]
    fn absdiff_promotes_integers() {
        let r = DistanceRegistry::new();
        let d = r.get(ABSDIFF).unwrap();
        assert_eq!(d.eval(&Value::Integer(10), &Value::Integer(11)), Ok(1.0));
        assert_eq!(d.eval(&Value::Integer(1), &Value::Real(2.5)), Ok(1.5));
        assert_eq!(d.eval(&Value::Integer(i64::MIN), &Value::Integer(i64::MAX)), Ok(u64::MAX as f64));
        assert!(matches!(
            d.eval(&Value::from("x"), &Value::Integer(1)),
            Err(DistanceError::VariantMismatch { kind: ValueKind::Text, .. })
        ));
    }

    #[test]
    fn exact_separates_variants() {
        let r = DistanceRegistry::new();
        let d = r.get(EXACT).unwrap();
        assert_eq!(d.eval(&Value::Integer(1), &Value::Real(1.0)), Ok(1.0));
        assert_eq!(d.eval(&Value::Integer(1), &Value::Integer(1)), Ok(0.0));
        assert_eq!(d.eval(&Value::Boolean(true), &Value::Boolean(false)), Ok(1.0));
    }

    #[test]
    fn invalid_user_results_are_reported() {
        let mut r = DistanceRegistry::new();
        r.register(DistanceFn::new("neg", &[ValueKind::Integer], |_, _| -1.0)).unwrap();
        assert!(matches!(
            r.get("neg").unwrap().eval(&Value::Integer(0), &Value::Integer(0)),
            Err(DistanceError::InvalidResult { .. })
        ));
    }
}
