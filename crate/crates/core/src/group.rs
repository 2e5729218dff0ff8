//! Finite groups as validated Cayley tables.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    table: Vec<usize>,
    identity: usize,
    names: Vec<String>,
}

impl CayleyTable {
    /// `table[a][b]` is the index of `ab`.
    pub fn new(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<CayleyTable> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup("table is not a square table over 0..n".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let at = |a: usize, b: usize| flat[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| at(a, b) == identity && at(b, a) == identity) {
                return Err(Error::NotAGroup(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::NotAGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let names = names.unwrap_or_else(|| (0..n).map(|i| format!("g{i}")).collect());
        if names.len() != n {
            return Err(Error::NotAGroup("names length differs from order".into()));
        }
        Ok(CayleyTable { n, table: flat, identity, names })
    }

    fn from_perms(perms: Vec<Vec<usize>>, names: Vec<String>) -> CayleyTable {
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
        let index = |p: &Vec<usize>| perms.iter().position(|x| x == p).expect("closed set of permutations");
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index(&compose(p, q))).collect())
            .collect();
        CayleyTable::new(table, Some(names)).expect("permutation group")
    }

    /// `C_n = ⟨g⟩`, element `i` is `g^i`.
    pub fn cyclic(n: usize) -> CayleyTable {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n).map(|i| if i == 0 { "1".to_string() } else { format!("g^{i}") }).collect();
        CayleyTable::new(table, Some(names)).unwrap()
    }

    /// `S_3` as permutations of {0,1,2}; the first three elements form `C_3`.
    pub fn symmetric3() -> CayleyTable {
        let perms = vec![
            vec![0, 1, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![1, 0, 2],
            vec![0, 2, 1],
            vec![2, 1, 0],
        ];
        let names = ["1", "c", "c^2", "(01)", "(12)", "(02)"].iter().map(|s| s.to_string()).collect();
        CayleyTable::from_perms(perms, names)
    }

    /// Dihedral group of order `2n` acting on the `n`-gon: rotations `r^i`
    /// first (a copy of `C_n`), then reflections `s r^i`.
    pub fn dihedral(n: usize) -> CayleyTable {
        assert!(n >= 3);
        let mut perms = Vec::new();
        let mut names = Vec::new();
        for i in 0..n {
            perms.push((0..n).map(|v| (v + i) % n).collect());
            names.push(if i == 0 { "1".into() } else { format!("r^{i}") });
        }
        for i in 0..n {
            perms.push((0..n).map(|v| (2 * n - v - i) % n).collect());
            names.push(format!("sr^{i}"));
        }
        CayleyTable::from_perms(perms, names)
    }

    pub fn by_name(name: &str) -> Result<CayleyTable> {
        let lower = name.to_ascii_lowercase();
        let bad = || Error::BadParams(format!("unknown group `{name}` (use C<n>, S3 or D<n>)"));
        if lower == "s3" {
            return Ok(CayleyTable::symmetric3());
        }
        let (kind, num) = lower.split_at(1);
        let n: usize = num.parse().map_err(|_| bad())?;
        match kind {
            "c" if (1..=12).contains(&n) => Ok(CayleyTable::cyclic(n)),
            "d" if (3..=6).contains(&n) => Ok(CayleyTable::dihedral(n)),
            _ => Err(bad()),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Checks that `elems` is a subgroup and returns it sorted.
    pub fn subgroup(&self, elems: &[usize]) -> Result<Vec<usize>> {
        let mut h: Vec<usize> = elems.to_vec();
        h.sort_unstable();
        h.dedup();
        if h.iter().any(|&x| x >= self.n) || !h.contains(&self.identity) {
            return Err(Error::BadParams("subgroup must contain the identity".into()));
        }
        for &a in &h {
            for &b in &h {
                if h.binary_search(&self.mul(a, b)).is_err() {
                    return Err(Error::BadParams("subset is not closed under multiplication".into()));
                }
            }
        }
        Ok(h)
    }

    /// Cayley table of a subgroup, with element `i` of the result standing
    /// for `elems[i]` of the sorted subgroup.
    pub fn subgroup_table(&self, elems: &[usize]) -> Result<(CayleyTable, Vec<usize>)> {
        let h = self.subgroup(elems)?;
        let pos = |x: usize| h.binary_search(&x).expect("closed");
        let table = h.iter().map(|&a| h.iter().map(|&b| pos(self.mul(a, b))).collect()).collect();
        let names = h.iter().map(|&a| self.names[a].clone()).collect();
        Ok((CayleyTable::new(table, Some(names))?, h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_groups() {
        assert_eq!(CayleyTable::cyclic(5).order(), 5);
        let s3 = CayleyTable::symmetric3();
        assert_eq!(s3.order(), 6);
        assert!(s3.subgroup(&[0, 1, 2]).is_ok());
        assert!(s3.subgroup(&[0, 3]).is_ok());
        assert!(s3.subgroup(&[0, 3, 4]).is_err());
        let d4 = CayleyTable::dihedral(4);
        assert_eq!(d4.order(), 8);
        assert!(d4.subgroup(&[0, 1, 2, 3]).is_ok());
        // non-abelian
        assert!((0..8).any(|a| (0..8).any(|b| d4.mul(a, b) != d4.mul(b, a))));
    }

    #[test]
    fn rejects_non_groups() {
        assert!(CayleyTable::new(vec![vec![0, 0], vec![0, 0]], None).is_err());
        assert!(CayleyTable::new(vec![vec![0, 1], vec![1, 1]], None).is_err());
        assert!(CayleyTable::by_name("q8").is_err());
    }
}
