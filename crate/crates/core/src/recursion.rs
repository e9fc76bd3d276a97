//! Kontsevich's recursion for the number `N_d` of rational plane curves of
//! degree `d` through `3d - 1` general points.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficients `C(n, k)` for `n <= max` from Pascal's triangle.
pub struct Binomials {
    rows: Vec<Vec<BigInt>>,
}

impl Binomials {
    pub fn new(max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=max {
            let prev = &rows[n - 1];
            let mut row = vec![BigInt::one(); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            rows.push(row);
        }
        Binomials { rows }
    }

    /// `C(n, k)`, zero outside `0 <= k <= n`.
    pub fn get(&self, n: i64, k: i64) -> BigInt {
        if n < 0 || k < 0 || k > n {
            return BigInt::zero();
        }
        self.rows[n as usize][k as usize].clone()
    }
}

/// `N_1, ..., N_dmax`, keyed by degree.
pub fn kontsevich(d_max: u32) -> BTreeMap<u32, BigInt> {
    let mut n: BTreeMap<u32, BigInt> = BTreeMap::new();
    if d_max == 0 {
        return n;
    }
    n.insert(1, BigInt::one());
    let binom = Binomials::new((3 * d_max as usize).saturating_sub(4).max(1));
    for d in 2..=d_max {
        let top = 3 * d as i64 - 4;
        let mut total = BigInt::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            let (a, b) = (BigInt::from(d1), BigInt::from(d2));
            let term = &a * &a * &b * &b * binom.get(top, 3 * d1 as i64 - 2)
                - &a * &a * &a * &b * binom.get(top, 3 * d1 as i64 - 1);
            total += term * &n[&d1] * &n[&d2];
        }
        n.insert(d, total);
    }
    n
}

/// The table as a JSON object with decimal strings: `{"1":"1","2":"1",...}`.
pub fn table_json(table: &BTreeMap<u32, BigInt>) -> serde_json::Value {
    serde_json::Value::Object(table.iter().map(|(d, v)| (d.to_string(), v.to_string().into())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let t = kontsevich(5);
        let v: Vec<String> = t.values().map(|x| x.to_string()).collect();
        assert_eq!(v, ["1", "1", "12", "620", "87304"]);
    }

    #[test]
    fn positive_through_twelve() {
        let t = kontsevich(12);
        assert_eq!(t.len(), 12);
        assert!(t.values().all(|x| *x > BigInt::zero()));
        assert_eq!(t[&6].to_string(), "26312976");
    }

    #[test]
    fn binomials() {
        let b = Binomials::new(10);
        assert_eq!(b.get(10, 3), BigInt::from(120));
        assert_eq!(b.get(2, 3), BigInt::zero());
        assert_eq!(b.get(2, -1), BigInt::zero());
    }

    #[test]
    fn json() {
        assert_eq!(table_json(&kontsevich(3)).to_string(), r#"{"1":"1","2":"1","3":"12"}"#);
    }
}
