use serde::{Deserialize, Serialize};

/// A finite group by its multiplication table on `0..order`, with the
/// identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("multiplication table is not square or has out-of-range entries")]
    Shape,
    #[error("element 0 is not the identity")]
    Identity,
    #[error("associativity fails on ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),
    #[error("element {0} has no inverse")]
    Inverse(usize),
    #[error("unknown group {0:?}; expected Z<n>, S3 or A3")]
    Unknown(String),
    #[error("unknown subgroup {0:?} of {1}")]
    UnknownSubgroup(String, String),
}

fn perm_compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

impl Group {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).expect("verified group")
    }

    pub fn verify(&self) -> Result<(), GroupError> {
        let n = self.order();
        if n == 0 || self.names.len() != n || self.table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupError::Shape);
        }
        if (0..n).any(|a| self.table[0][a] != a || self.table[a][0] != a) {
            return Err(GroupError::Identity);
        }
        for a in 0..n {
            if !(0..n).any(|b| self.table[a][b] == 0 && self.table[b][a] == 0) {
                return Err(GroupError::Inverse(a));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(GroupError::Associativity(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn cyclic(n: usize) -> Group {
        let names = (0..n).map(|k| if k == 0 { "e".to_string() } else { format!("g{k}") }).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Group { names, table }
    }

    /// `S_3` as permutations of `{1,2,3}` in the order
    /// `e, (123), (132), (12), (23), (13)`.
    pub fn symmetric3() -> Group {
        let perms: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![1, 0, 2],
            vec![0, 2, 1],
            vec![2, 1, 0],
        ];
        let names = ["e", "(123)", "(132)", "(12)", "(23)", "(13)"].iter().map(|s| s.to_string()).collect();
        let idx = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
        let table = perms.iter().map(|p| perms.iter().map(|q| idx(&perm_compose(p, q))).collect()).collect();
        Group { names, table }
    }

    pub fn by_name(name: &str) -> Result<Group, GroupError> {
        match name {
            "S3" => Ok(Group::symmetric3()),
            "A3" => Ok(Group::cyclic(3)),
            _ => name
                .strip_prefix('Z')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .map(Group::cyclic)
                .ok_or_else(|| GroupError::Unknown(name.to_string())),
        }
    }

    /// Elements of a named subgroup, in increasing index order.
    pub fn subgroup(&self, group_name: &str, sub: &str) -> Result<Vec<usize>, GroupError> {
        let n = self.order();
        let elems = match (group_name, sub) {
            (_, "1") => vec![0],
            (g, h) if g == h => (0..n).collect(),
            ("S3", "A3") => vec![0, 1, 2],
            ("S3", "C2") | ("S3", "<(12)>") => vec![0, 3],
            _ => return Err(GroupError::UnknownSubgroup(sub.to_string(), group_name.to_string())),
        };
        Ok(elems)
    }

    /// Left coset representatives of `sub`, each the least index in its coset.
    pub fn coset_representatives(&self, sub: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &h in sub {
                seen[self.mul(g, h)] = true;
            }
        }
        reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups_verify() {
        for g in [Group::cyclic(1), Group::cyclic(2), Group::cyclic(3), Group::symmetric3()] {
            assert_eq!(g.verify(), Ok(()));
        }
        let s3 = Group::symmetric3();
        // (12)(23) = (123) with right-to-left composition
        assert_eq!(s3.names[s3.mul(3, 4)], "(123)");
        assert_eq!(s3.coset_representatives(&[0, 1, 2]), vec![0, 3]);
        assert_eq!(s3.coset_representatives(&[0, 3]).len(), 3);
        let mut bad = Group::cyclic(3);
        bad.table[1][1] = 1;
        assert!(bad.verify().is_err());
    }
}
