//! Choice functions and lazily materialized points of the subshift.
//!
//! A choice function picks one infinite extension per tree vertex; here the
//! decision at a vertex depends only on the vertex itself, which makes the
//! consistency condition (a choice through a deeper vertex reuses that
//! vertex's choice) hold by construction.

use std::sync::{Arc, Mutex};

use crate::language::{FactorCursor, FactorOracle, Symbol, Word};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChoiceStrategy {
    /// Always the lexicographically smallest extension.
    LexMin,
    /// At each vertex, the extension selected by a hash of (seed, vertex).
    Seeded(u64),
}

impl ChoiceStrategy {
    pub fn describe(&self) -> String {
        match self {
            ChoiceStrategy::LexMin => "lexmin".into(),
            ChoiceStrategy::Seeded(s) => format!("seed({s})"),
        }
    }
}

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

fn fnv_step(hash: u64, byte: u8) -> u64 {
    (hash ^ byte as u64).wrapping_mul(FNV_PRIME)
}

fn fnv_seed(seed: u64) -> u64 {
    seed.to_le_bytes().iter().fold(FNV_OFFSET, |h, &b| fnv_step(h, b))
}

/// A choice function over a fixed oracle.
#[derive(Clone)]
pub struct ChoiceFunction {
    oracle: Arc<FactorOracle>,
    strategy: ChoiceStrategy,
}

impl ChoiceFunction {
    pub fn new(oracle: Arc<FactorOracle>, strategy: ChoiceStrategy) -> Self {
        ChoiceFunction { oracle, strategy }
    }

    pub fn lexmin(oracle: Arc<FactorOracle>) -> Self {
        Self::new(oracle, ChoiceStrategy::LexMin)
    }

    pub fn seeded(oracle: Arc<FactorOracle>, seed: u64) -> Self {
        Self::new(oracle, ChoiceStrategy::Seeded(seed))
    }

    pub fn oracle(&self) -> &Arc<FactorOracle> {
        &self.oracle
    }

    pub fn strategy(&self) -> ChoiceStrategy {
        self.strategy
    }

    /// The chosen point through `base`.
    pub fn point(&self, base: &Word) -> Result<LazyPoint> {
        LazyPoint::new(self.oracle.clone(), self.strategy, base.clone())
    }
}

impl std::fmt::Debug for ChoiceFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChoiceFunction({})", self.strategy.describe())
    }
}

struct PointCache {
    symbols: Vec<Symbol>,
    cursor: FactorCursor,
    hash: u64,
}

/// A one-sided infinite word of the subshift, materialized on demand up to
/// any certified prefix length. Deterministic given (strategy, base).
pub struct LazyPoint {
    oracle: Arc<FactorOracle>,
    strategy: ChoiceStrategy,
    base: Word,
    cache: Mutex<PointCache>,
}

impl LazyPoint {
    fn new(oracle: Arc<FactorOracle>, strategy: ChoiceStrategy, base: Word) -> Result<Self> {
        if !oracle.is_factor(&base)? {
            return Err(oracle.not_a_factor(&base));
        }
        let cursor = oracle.cursor_for(&base).expect("base is a factor");
        let seed = match strategy {
            ChoiceStrategy::LexMin => FNV_OFFSET,
            ChoiceStrategy::Seeded(s) => fnv_seed(s),
        };
        let hash = base.symbols().iter().fold(seed, |h, &b| fnv_step(h, b));
        Ok(LazyPoint {
            oracle,
            strategy,
            base: base.clone(),
            cache: Mutex::new(PointCache {
                symbols: base.symbols().to_vec(),
                cursor,
                hash,
            }),
        })
    }

    pub fn oracle(&self) -> &Arc<FactorOracle> {
        &self.oracle
    }

    pub fn strategy(&self) -> ChoiceStrategy {
        self.strategy
    }

    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn descriptor(&self) -> String {
        format!(
            "{}:{}",
            self.strategy.describe(),
            self.oracle.alphabet().format(&self.base)
        )
    }

    fn ensure(&self, n: usize) -> Result<()> {
        self.oracle.guard(n)?;
        let mut cache = self.cache.lock().unwrap();
        while cache.symbols.len() < n {
            let ext = self.oracle.cursor_extensions(cache.cursor);
            if ext.is_empty() {
                return Err(Error::InvalidArgument(format!(
                    "point extension dead-ends at length {} (uncertified oracle?)",
                    cache.symbols.len()
                )));
            }
            let c = match self.strategy {
                ChoiceStrategy::LexMin => ext[0],
                ChoiceStrategy::Seeded(_) => {
                    if ext.len() == 1 {
                        ext[0]
                    } else {
                        ext[(cache.hash % ext.len() as u64) as usize]
                    }
                }
            };
            cache.cursor = self
                .oracle
                .cursor_step(cache.cursor, c)
                .expect("extension must step");
            cache.symbols.push(c);
            cache.hash = fnv_step(cache.hash, c);
        }
        Ok(())
    }

    /// The prefix of length `n` (materializing as needed).
    pub fn prefix(&self, n: usize) -> Result<Word> {
        self.ensure(n)?;
        let cache = self.cache.lock().unwrap();
        Ok(Word::from_symbols(cache.symbols[..n].to_vec()))
    }

    pub fn symbol_at(&self, i: usize) -> Result<Symbol> {
        self.ensure(i + 1)?;
        let cache = self.cache.lock().unwrap();
        Ok(cache.symbols[i])
    }

    /// How much of the point is currently materialized.
    pub fn materialized_len(&self) -> usize {
        self.cache.lock().unwrap().symbols.len()
    }
}

impl Clone for LazyPoint {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().unwrap();
        LazyPoint {
            oracle: self.oracle.clone(),
            strategy: self.strategy,
            base: self.base.clone(),
            cache: Mutex::new(PointCache {
                symbols: cache.symbols.clone(),
                cursor: cache.cursor,
                hash: cache.hash,
            }),
        }
    }
}

impl std::fmt::Debug for LazyPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LazyPoint({})", self.descriptor())
    }
}

/// Index of the first symbol where the two points differ, or `None` if they
/// agree up to `depth`.
pub fn first_difference(x: &LazyPoint, y: &LazyPoint, depth: usize) -> Result<Option<usize>> {
    for i in 0..depth {
        if x.symbol_at(i)? != y.symbol_at(i)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
