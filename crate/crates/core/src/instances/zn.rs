//! Z^n with Δ = (1,…,1): the hat complex is Z^n itself.

use crate::error::{Error, Result};
use crate::garside::HatStructure;

#[derive(Clone, Debug)]
pub struct ZnProvider {
    n: usize,
}

impl ZnProvider {
    pub fn new(n: usize) -> Result<ZnProvider> {
        if !(2..=7).contains(&n) {
            return Err(Error::Precondition(format!("Z^n needs 2 ≤ n ≤ 7, got {n}")));
        }
        Ok(ZnProvider { n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn parse(&self, text: &str) -> Result<Vec<i64>> {
        let v: Vec<i64> = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse().map_err(|_| Error::Parse {
                    location: text.to_string(),
                    message: format!("bad coordinate {t:?}"),
                })
            })
            .collect::<Result<_>>()?;
        if v.len() != self.n {
            return Err(Error::Parse {
                location: text.to_string(),
                message: format!("expected {} coordinates", self.n),
            });
        }
        Ok(v)
    }
}

impl HatStructure for ZnProvider {
    type V = Vec<i64>;

    fn period(&self) -> i64 {
        self.n as i64
    }
    fn rank(&self, x: &Vec<i64>) -> i64 {
        x.iter().sum()
    }
    fn phi(&self, x: &Vec<i64>, k: i64) -> Vec<i64> {
        x.iter().map(|c| c + k).collect()
    }
    fn up(&self, x: &Vec<i64>) -> Vec<Vec<i64>> {
        (1u32..1 << self.n)
            .map(|m| x.iter().enumerate().map(|(i, c)| c + i64::from(m >> i & 1)).collect())
            .collect()
    }
    fn le_t(&self, x: &Vec<i64>, y: &Vec<i64>) -> Result<bool> {
        Ok(x.iter().zip(y).all(|(a, b)| a <= b))
    }
    fn project(&self, x: &Vec<i64>) -> Vec<i64> {
        let m = x.iter().copied().min().unwrap_or(0);
        self.phi(x, -m)
    }
    fn show(&self, x: &Vec<i64>) -> String {
        format!("({})", x.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
    }
    fn lt_edge(&self, x: &Vec<i64>, y: &Vec<i64>) -> bool {
        x != y && x.iter().zip(y).all(|(a, b)| b - a == 0 || b - a == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::{bestvina_dist, left_nf, x_neighbors};

    #[test]
    fn z2_is_a_line() {
        let z = ZnProvider::new(2).unwrap();
        let nb = x_neighbors(&z, &vec![0, 0]);
        assert_eq!(nb, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(x_neighbors(&z, &vec![0, 3]).len(), 2);
    }

    #[test]
    fn z3_examples() {
        let z = ZnProvider::new(3).unwrap();
        assert_eq!(z.alpha(&vec![0, 0, 0], &vec![2, 1, 0]).unwrap(), vec![1, 1, 0]);
        let nf = left_nf(&z, &vec![0, 0, 0], &vec![2, 1, 0]).unwrap();
        assert_eq!(nf.path, vec![vec![0, 0, 0], vec![1, 1, 0], vec![2, 1, 0]]);
        assert_eq!(nf.k, 0);
        let nf = left_nf(&z, &vec![0, 0, 0], &vec![1, 1, 1]).unwrap();
        assert_eq!((nf.simple_len, nf.k), (0, 1));
        assert_eq!(bestvina_dist(&z, &vec![0, 0, 0], &vec![2, 1, 0]).unwrap(), 3);
    }

    #[test]
    fn range_checked() {
        assert!(ZnProvider::new(1).is_err());
        assert!(ZnProvider::new(8).is_err());
    }
}
