//! Finite groups of linear maps: composition tables and identification as
//! cyclic, dicyclic or split metacyclic groups.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::gcd;
use crate::linalg::Matrix;

pub struct Group {
    elems: Vec<Matrix>,
    // table[a][b] = index of a∘b (b applied first)
    table: Vec<Vec<u32>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl Group {
    /// Builds the composition table; fails unless the maps form a group.
    pub fn from_maps(mut maps: Vec<Matrix>, p: u32) -> Result<Group> {
        maps.sort();
        maps.dedup();
        let Some(first) = maps.first() else {
            return Err(Error::NotClosed);
        };
        let index: HashMap<Vec<u32>, usize> = maps.iter().enumerate().map(|(i, m)| (m.key(), i)).collect();
        let identity = *index.get(&Matrix::identity(first.dim).key()).ok_or(Error::NotClosed)?;
        let mut table = Vec::with_capacity(maps.len());
        for a in &maps {
            let mut row = Vec::with_capacity(maps.len());
            for b in &maps {
                let c = a.compose(b, p);
                row.push(*index.get(&c.key()).ok_or(Error::NotClosed)? as u32);
            }
            table.push(row);
        }
        let inverse = (0..maps.len())
            .map(|a| table[a].iter().position(|&c| c as usize == identity).ok_or(Error::NotClosed))
            .collect::<Result<Vec<_>>>()?;
        Ok(Group { elems: maps, table, identity, inverse })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elems
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.elems.binary_search(m).ok()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        (0..e.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The subgroup generated by `gens`, as a membership mask.
    pub fn generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order()];
        member[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    stack.push(y);
                }
            }
        }
        member
    }

    pub fn generated_order(&self, gens: &[usize]) -> usize {
        self.generated(gens).iter().filter(|&&b| b).count()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &x in set {
            member[x] = true;
        }
        set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, b)]))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u64;
        (0..self.order()).any(|a| self.element_order(a) == n)
    }

    pub fn order_histogram(&self) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for a in 0..self.order() {
            *h.entry(self.element_order(a)).or_insert(0) += 1;
        }
        h
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupTag {
    Cyclic(u64),
    Dicyclic(u64),
    /// `Z/a ⋊_l Z/b`: `x^a = y^b = 1`, `y x y^{-1} = x^l`.
    Semidirect { a: u64, b: u64, l: u64 },
    Unknown,
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::Cyclic(n) => write!(f, "Cyclic({n})"),
            GroupTag::Dicyclic(r) => write!(f, "Dicyclic({r})"),
            GroupTag::Semidirect { a, b, l } => write!(f, "Semidirect({a},{b},{l})"),
            GroupTag::Unknown => write!(f, "Unknown"),
        }
    }
}

impl Serialize for GroupTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupId {
    pub order: u64,
    pub tag: GroupTag,
    /// Indices (into the sorted element list) of the witnessing generators.
    pub generators: Vec<usize>,
    /// Relations checked on the composition table.
    pub relations: Vec<String>,
    /// Number of elements of each order.
    pub histogram: BTreeMap<u64, u64>,
}

pub fn identify(g: &Group) -> GroupId {
    let n = g.order() as u64;
    let histogram = g.order_histogram();
    let done = |tag, generators, relations| GroupId { order: n, tag, generators, relations, histogram: histogram.clone() };

    if let Some(x) = (0..g.order()).find(|&a| g.element_order(a) == n) {
        return done(GroupTag::Cyclic(n), vec![x], vec![format!("g^{n} = 1"), format!("|g| = {n}")]);
    }
    if let Some((r, x, y)) = find_dicyclic(g) {
        let rels = vec![
            format!("g^{} = 1", 2 * r),
            format!("h^2 = g^{r}"),
            "h^-1 g h = g^-1".to_string(),
            format!("<g, h> has order {n}"),
        ];
        return done(GroupTag::Dicyclic(r), vec![x, y], rels);
    }
    if let Some((a, b, l, x, y)) = find_semidirect(g) {
        let rels = vec![
            format!("x^{a} = 1"),
            format!("y^{b} = 1"),
            format!("y x y^-1 = x^{l}"),
            "<x> is normal and meets <y> trivially".to_string(),
        ];
        return done(GroupTag::Semidirect { a, b, l }, vec![x, y], rels);
    }
    done(GroupTag::Unknown, Vec::new(), Vec::new())
}

fn find_dicyclic(g: &Group) -> Option<(u64, usize, usize)> {
    let n = g.order() as u64;
    if n % 4 != 0 || n < 8 {
        return None;
    }
    let r = n / 4;
    for x in (0..g.order()).filter(|&a| g.element_order(a) == 2 * r) {
        let xr = g.pow(x, r as i64);
        let xinv = g.inv(x);
        for y in 0..g.order() {
            if g.mul(y, y) == xr
                && g.mul(g.mul(g.inv(y), x), y) == xinv
                && g.generated_order(&[x, y]) as u64 == n
            {
                return Some((r, x, y));
            }
        }
    }
    None
}

fn find_semidirect(g: &Group) -> Option<(u64, u64, u64, usize, usize)> {
    let n = g.order() as u64;
    let orders: Vec<u64> = (0..g.order()).map(|a| g.element_order(a)).collect();
    for a in (2..n).filter(|a| n % a == 0) {
        let b = n / a;
        let mut found: Option<(u64, usize, usize)> = None;
        let mut canonical = None;
        for x in (0..g.order()).filter(|&e| orders[e] == a) {
            let cyc: Vec<usize> = (0..a as i64).map(|i| g.pow(x, i)).collect();
            let mut in_x = vec![false; g.order()];
            for &c in &cyc {
                in_x[c] = true;
            }
            let normal = (0..g.order()).all(|h| in_x[g.mul(g.mul(h, x), g.inv(h))]);
            if !normal {
                continue;
            }
            for y in (0..g.order()).filter(|&e| orders[e] == b) {
                let trivial = (1..b as i64).all(|i| !in_x[g.pow(y, i)]);
                if !trivial {
                    continue;
                }
                let conj = g.mul(g.mul(y, x), g.inv(y));
                let l = cyc.iter().position(|&c| c == conj).expect("normal") as u64;
                let canon = *canonical.get_or_insert_with(|| canonical_exponent(l, a, b));
                if l == canon {
                    found = Some((l, x, y));
                    break;
                }
            }
            if found.is_some() {
                break;
            }
        }
        if let Some((l, x, y)) = found {
            return Some((a, b, l, x, y));
        }
    }
    None
}

/// Least `l^u mod a` over `u` coprime to `b`: replacing `y` by `y^u` turns
/// the action exponent `l` into `l^u`.
pub fn canonical_exponent(l: u64, a: u64, b: u64) -> u64 {
    (1..=b.max(1))
        .filter(|&u| gcd(u, b) == 1)
        .map(|u| (0..u).fold(1 % a, |acc, _| acc * l % a))
        .min()
        .unwrap_or(l % a)
}

#[cfg(test)]
mod tests {
    use super::*;

    // permutation matrices over F_2 for small permutation groups
    fn perm(p: &[usize]) -> Matrix {
        let d = p.len();
        Matrix {
            dim: d,
            cols: (0..d)
                .map(|j| {
                    let mut c = vec![0; d];
                    c[p[j]] = 1;
                    c
                })
                .collect(),
        }
    }

    fn closure(gens: &[Matrix], p: u32) -> Vec<Matrix> {
        let mut all = vec![Matrix::identity(gens[0].dim)];
        let mut i = 0;
        while i < all.len() {
            for g in gens {
                let c = all[i].compose(g, p);
                if !all.contains(&c) {
                    all.push(c);
                }
            }
            i += 1;
        }
        all
    }

    #[test]
    fn cyclic_group() {
        let g = Group::from_maps(closure(&[perm(&[1, 2, 3, 4, 0])], 2), 2).unwrap();
        assert_eq!(identify(&g).tag, GroupTag::Cyclic(5));
    }

    #[test]
    fn s3_is_semidirect() {
        let g = Group::from_maps(closure(&[perm(&[1, 2, 0]), perm(&[1, 0, 2])], 2), 2).unwrap();
        assert_eq!(identify(&g).tag, GroupTag::Semidirect { a: 3, b: 2, l: 2 });
    }

    #[test]
    fn quaternion_group() {
        // Q8 as 2x2 matrices over F_3: i = [[0,1],[2,0]], j = [[1,1],[1,2]]
        let i = Matrix { dim: 2, cols: vec![vec![0, 2], vec![1, 0]] };
        let j = Matrix { dim: 2, cols: vec![vec![1, 1], vec![1, 2]] };
        let g = Group::from_maps(closure(&[i, j], 3), 3).unwrap();
        assert_eq!(g.order(), 8);
        let id = identify(&g);
        assert_eq!(id.tag, GroupTag::Dicyclic(2));
        assert_eq!(id.histogram, BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
    }

    #[test]
    fn klein_four_is_direct_product() {
        let g = Group::from_maps(closure(&[perm(&[1, 0, 2, 3]), perm(&[0, 1, 3, 2])], 2), 2).unwrap();
        assert_eq!(identify(&g).tag, GroupTag::Semidirect { a: 2, b: 2, l: 1 });
    }

    #[test]
    fn not_closed_is_rejected() {
        assert_eq!(Group::from_maps(vec![perm(&[1, 2, 0])], 2).err(), Some(Error::NotClosed));
    }

    #[test]
    fn canonical_exponents() {
        assert_eq!(canonical_exponent(11, 19, 9), 7);
        assert_eq!(canonical_exponent(7, 19, 9), 7);
        assert_eq!(canonical_exponent(1, 5, 4), 1);
    }
}
