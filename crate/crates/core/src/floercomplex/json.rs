use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::morse::canonical_order;
use super::{FloerComplex, FloerError, Generator, MorseComplex, ProductTable};
use crate::f2linalg::F2Matrix;

/// Serialized complex. Operator entries are `[row, col]` and product entries
/// `[i, j, k]`, all indexing `generators` in the order listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    #[serde(rename = "dimL")]
    pub dim_l: usize,
    #[serde(rename = "NL")]
    pub nl: usize,
    pub generators: Vec<Generator>,
    pub operators: BTreeMap<String, Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub products: Option<BTreeMap<String, Vec<[usize; 3]>>>,
}

fn parse_key(key: &str) -> Result<usize, FloerError> {
    key.parse()
        .map_err(|_| FloerError::Json(format!("operator key {key:?} is not a nonnegative integer")))
}

impl FloerComplex {
    /// Builds and validates a complex from its serialized form. Generators
    /// are reordered canonically and all indices remapped.
    pub fn from_json(json: &ComplexJson) -> Result<Self, FloerError> {
        let n = json.generators.len();
        let order = canonical_order(&json.generators);
        let mut new_index = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let generators: Vec<Generator> = order.iter().map(|&i| json.generators[i].clone()).collect();
        let check = |i: usize| {
            if i < n {
                Ok(new_index[i])
            } else {
                Err(FloerError::Json(format!("generator index {i} out of range ({n} generators)")))
            }
        };

        let mut ops: BTreeMap<usize, F2Matrix> = BTreeMap::new();
        for (key, entries) in &json.operators {
            let k = parse_key(key)?;
            let m = ops.entry(k).or_insert_with(|| F2Matrix::zeros(n, n));
            for &[r, c] in entries {
                m.flip(check(r)?, check(c)?);
            }
        }
        let boundary = ops.remove(&0).unwrap_or_else(|| F2Matrix::zeros(n, n));
        let morse = MorseComplex::new(json.dim_l, generators, boundary)?;
        let top = ops.keys().last().copied().unwrap_or(0);
        let higher: Vec<F2Matrix> = (1..=top)
            .map(|k| ops.remove(&k).unwrap_or_else(|| F2Matrix::zeros(n, n)))
            .collect();
        let fc = FloerComplex::assemble(morse, json.nl, higher)?;

        match &json.products {
            None => Ok(fc),
            Some(products) => {
                let mut tables: BTreeMap<usize, Vec<(usize, usize, usize)>> = BTreeMap::new();
                for (key, entries) in products {
                    let l = parse_key(key)?;
                    let t = tables.entry(l).or_default();
                    for &[i, j, k] in entries {
                        t.push((check(i)?, check(j)?, check(k)?));
                    }
                }
                let top = tables.keys().last().copied().unwrap_or(0);
                let list = (0..=top)
                    .map(|l| ProductTable::from_triples(n, tables.remove(&l).unwrap_or_default()))
                    .collect();
                fc.with_products(list)
            }
        }
    }

    /// Canonical serialized form: generators in canonical order, one
    /// operator entry list per `k = 0..=ν`, sorted entries.
    pub fn to_json(&self) -> ComplexJson {
        let operators = self
            .ops()
            .iter()
            .enumerate()
            .map(|(k, m)| (k.to_string(), m.entries().into_iter().map(|(r, c)| [r, c]).collect()))
            .collect();
        let products = self.products().map(|tables| {
            tables
                .iter()
                .enumerate()
                .map(|(l, t)| (l.to_string(), t.triples().into_iter().map(|(i, j, k)| [i, j, k]).collect()))
                .collect()
        });
        ComplexJson {
            dim_l: self.dim_l(),
            nl: self.nl(),
            generators: self.morse().generators().to_vec(),
            operators,
            products,
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, FloerError> {
        let json: ComplexJson = serde_json::from_str(text).map_err(|e| FloerError::Json(e.to_string()))?;
        Self::from_json(&json)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("complex serializes")
    }
}
