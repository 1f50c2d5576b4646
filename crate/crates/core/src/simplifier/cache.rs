use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::generate::generate_dnr;
use super::term::IntervalFormula;
use crate::error::Result;

/// Memoized `generate_dnr` results keyed by `(n, r)`.
#[derive(Debug, Default)]
pub struct FormulaCache {
    entries: RwLock<HashMap<(usize, usize), Arc<IntervalFormula>>>,
}

impl FormulaCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: usize, r: usize) -> Result<Arc<IntervalFormula>> {
        if let Some(f) = self.entries.read().expect("cache lock").get(&(n, r)) {
            return Ok(f.clone());
        }
        let mut entries = self.entries.write().expect("cache lock");
        if let Some(f) = entries.get(&(n, r)) {
            return Ok(f.clone());
        }
        let f = Arc::new(generate_dnr(n, r)?);
        entries.insert((n, r), f.clone());
        Ok(f)
    }

    /// Inserts a formula, e.g. one read back from JSON.
    pub fn insert(&self, formula: IntervalFormula) {
        self.entries
            .write()
            .expect("cache lock")
            .insert((formula.n, formula.r), Arc::new(formula));
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memoizes_and_round_trips() {
        let cache = FormulaCache::new();
        let a = cache.get(3, 1).unwrap();
        let b = cache.get(3, 1).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
        let back = IntervalFormula::from_json(&a.to_json()).unwrap();
        assert_eq!(&back, a.as_ref());
        let other = FormulaCache::new();
        other.insert(back);
        assert_eq!(other.get(3, 1).unwrap().as_ref(), a.as_ref());
    }
}
