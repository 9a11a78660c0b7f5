//! Finite permutation groups by generators, with full element enumeration,
//! subgroup machinery, Sylow subgroups and p-sectional rank.
//!
//! Everything here is desk scale: elements are enumerated eagerly and
//! multiplication goes through a Cayley table.

use crate::error::{ModRepError, Result};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

pub type Point = u16;

/// Images of 0..degree under the permutation.
pub type Perm = Vec<Point>;

pub const DEFAULT_ORDER_BOUND: usize = 10_000;
/// Orders beyond this refuse subgroup enumeration.
pub const SUBGROUP_ENUM_BOUND: usize = 256;

fn compose(p: &Perm, q: &Perm) -> Perm {
    // (p*q)(x) = p(q(x))
    q.iter().map(|&x| p[x as usize]).collect()
}

fn invert(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as Point;
    }
    inv
}

struct GroupData {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mult: Vec<u32>,
    inv: Vec<u32>,
    name: Option<String>,
}

/// A finite permutation group with enumerated elements. Cheap to clone.
#[derive(Clone)]
pub struct PermGroup(Arc<GroupData>);

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.degree == other.0.degree && self.0.elements == other.0.elements)
    }
}
impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.name {
            Some(n) => write!(f, "{} (order {})", n, self.order()),
            None => write!(f, "PermGroup(degree {}, order {})", self.degree(), self.order()),
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        PermGroup::new_bounded(degree, gens, DEFAULT_ORDER_BOUND, None)
    }

    pub fn named(degree: usize, gens: Vec<Perm>, name: &str) -> Result<PermGroup> {
        PermGroup::new_bounded(degree, gens, DEFAULT_ORDER_BOUND, Some(name.to_string()))
    }

    pub fn new_bounded(
        degree: usize,
        gens: Vec<Perm>,
        bound: usize,
        name: Option<String>,
    ) -> Result<PermGroup> {
        for g in &gens {
            if g.len() != degree {
                return Err(ModRepError::Precondition(format!(
                    "generator of length {} in group of degree {}",
                    g.len(),
                    degree
                )));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if (x as usize) >= degree || seen[x as usize] {
                    return Err(ModRepError::Precondition(
                        "generator is not a bijection of the points".into(),
                    ));
                }
                seen[x as usize] = true;
            }
        }
        let id: Perm = (0..degree as Point).collect();
        let mut elements = vec![id.clone()];
        let mut seen: HashSet<Perm> = elements.iter().cloned().collect();
        let mut frontier = vec![id];
        while let Some(e) = frontier.pop() {
            for g in &gens {
                let n = compose(g, &e);
                if seen.insert(n.clone()) {
                    if seen.len() > bound {
                        return Err(ModRepError::GroupTooLarge { order: seen.len(), bound });
                    }
                    elements.push(n.clone());
                    frontier.push(n);
                }
            }
        }
        elements.sort();
        let index: HashMap<Perm, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let n = elements.len();
        let mut mult = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mult[i * n + j] = index[&compose(&elements[i], &elements[j])] as u32;
            }
        }
        let inv = elements.iter().map(|e| index[&invert(e)] as u32).collect();
        Ok(PermGroup(Arc::new(GroupData { degree, gens, elements, index, mult, inv, name })))
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }
    pub fn order(&self) -> usize {
        self.0.elements.len()
    }
    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }
    pub fn generators(&self) -> &[Perm] {
        &self.0.gens
    }
    pub fn elements(&self) -> &[Perm] {
        &self.0.elements
    }
    pub fn perm(&self, i: usize) -> &Perm {
        &self.0.elements[i]
    }
    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.0.index.get(p).copied()
    }
    pub fn identity(&self) -> usize {
        self.index_of(&(0..self.degree() as Point).collect()).unwrap()
    }
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.0.mult[i * self.order() + j] as usize
    }
    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.0.inv[i] as usize
    }
    pub fn conj(&self, g: usize, x: usize) -> usize {
        // g x g^{-1}
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let id = self.identity();
        let mut x = i;
        let mut n = 1;
        while x != id {
            x = self.mul(x, i);
            n += 1;
        }
        n
    }

    /// Generator indices into the element list.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.0.gens.iter().filter_map(|g| self.index_of(g)).collect()
    }

    /// The largest power of p dividing the group order.
    pub fn p_part(&self, p: u64) -> usize {
        let mut n = self.order();
        let mut q = 1;
        while n % p as usize == 0 {
            n /= p as usize;
            q *= p as usize;
        }
        q
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        self.p_part(p) == self.order()
    }

    pub fn is_abelian(&self) -> bool {
        let gi = self.generator_indices();
        gi.iter().all(|&a| gi.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closure of a set of element indices under the group multiplication.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let id = self.identity();
        let mut inset = vec![false; self.order()];
        inset[id] = true;
        let mut out = vec![id];
        let mut frontier = vec![id];
        let seeds: Vec<usize> = seed.to_vec();
        while let Some(x) = frontier.pop() {
            for &s in &seeds {
                for y in [self.mul(x, s), self.mul(s, x)] {
                    if !inset[y] {
                        inset[y] = true;
                        out.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All subgroups, each exactly once, sorted by order then element set.
    ///
    /// Starts from the cyclic subgroups and repeatedly joins a known
    /// subgroup with one extra element until a fixpoint; every subgroup is
    /// reached because it is a chain of one-generator extensions of the
    /// trivial subgroup.
    pub fn subgroups(&self) -> Result<Vec<Subgroup>> {
        if self.order() > SUBGROUP_ENUM_BOUND {
            return Err(ModRepError::GroupTooLarge {
                order: self.order(),
                bound: SUBGROUP_ENUM_BOUND,
            });
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut list: Vec<Vec<usize>> = Vec::new();
        let trivial = vec![self.identity()];
        seen.insert(trivial.clone());
        list.push(trivial);
        for g in 0..self.order() {
            let c = self.closure(&[g]);
            if seen.insert(c.clone()) {
                list.push(c);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let h = list[i].clone();
            if h.len() < self.order() {
                for g in 0..self.order() {
                    if h.binary_search(&g).is_ok() {
                        continue;
                    }
                    let mut seed = h.clone();
                    seed.push(g);
                    let c = self.closure(&seed);
                    if seen.insert(c.clone()) {
                        list.push(c);
                    }
                }
            }
            i += 1;
        }
        list.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(list.into_iter().map(|elems| Subgroup { parent: self.clone(), elems }).collect())
    }

    /// A Sylow p-subgroup (the first one in the subgroup ordering).
    pub fn sylow(&self, p: u64) -> Result<Subgroup> {
        let target = self.p_part(p);
        self.subgroups()?
            .into_iter()
            .find(|s| s.order() == target && s.as_group().is_p_group(p))
            .ok_or_else(|| ModRepError::SearchFailure("Sylow subgroup not found".into()))
    }

    /// The whole group as a subgroup of itself.
    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup { parent: self.clone(), elems: (0..self.order()).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { parent: self.clone(), elems: vec![self.identity()] }
    }

    pub fn subgroup_from_elements(&self, elems: Vec<usize>) -> Result<Subgroup> {
        let mut e = elems;
        e.sort_unstable();
        e.dedup();
        let s = Subgroup { parent: self.clone(), elems: e };
        if !s.is_closed() {
            return Err(ModRepError::Precondition("element set is not a subgroup".into()));
        }
        Ok(s)
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        Subgroup { parent: self.clone(), elems: self.closure(gens) }
    }

    /// p-sectional rank: the maximum rank of an elementary abelian
    /// subquotient H/K, over all K normal in H <= P.
    pub fn sectional_rank(&self, p: u64) -> Result<u32> {
        if !self.is_p_group(p) {
            return Err(ModRepError::NotPGroup { p });
        }
        if self.order() == 1 {
            return Ok(0);
        }
        let subs = self.subgroups()?;
        let mut best = 0u32;
        for h in &subs {
            for k in &subs {
                if k.order() > h.order() || !k.is_subset_of(h) {
                    continue;
                }
                let idx = h.order() / k.order();
                if idx == 1 {
                    continue;
                }
                // rank bound: only worth checking if idx beats current best
                let rank = (idx as f64).log(p as f64).round() as u32;
                if rank <= best {
                    continue;
                }
                if !k.is_normal_in(h) {
                    continue;
                }
                // elementary abelian quotient: x^p in K and [x,y] in K
                let ok = h.elems.iter().all(|&x| {
                    let mut xp = x;
                    for _ in 1..p {
                        xp = self.mul(xp, x);
                    }
                    k.contains_index(xp)
                }) && h.elems.iter().all(|&x| {
                    h.elems.iter().all(|&y| {
                        let comm =
                            self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)));
                        k.contains_index(comm)
                    })
                });
                if ok {
                    best = rank;
                }
            }
        }
        Ok(best)
    }

    /// Direct product on the disjoint union of the point sets.
    pub fn direct_product(&self, other: &PermGroup) -> Result<PermGroup> {
        let d1 = self.degree();
        let d2 = other.degree();
        let mut gens: Vec<Perm> = Vec::new();
        for g in self.generators() {
            let mut p: Perm = g.clone();
            p.extend((d1..d1 + d2).map(|x| x as Point));
            gens.push(p);
        }
        for g in other.generators() {
            let mut p: Perm = (0..d1 as Point).collect();
            p.extend(g.iter().map(|&x| x + d1 as Point));
            gens.push(p);
        }
        PermGroup::new(d1 + d2, gens)
    }
}

/// A subgroup stored as a sorted list of indices into the parent enumeration.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: PermGroup,
    elems: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {})", self.order())
    }
}

impl Subgroup {
    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }
    pub fn order(&self) -> usize {
        self.elems.len()
    }
    pub fn element_indices(&self) -> &[usize] {
        &self.elems
    }
    pub fn contains_index(&self, i: usize) -> bool {
        self.elems.binary_search(&i).is_ok()
    }
    pub fn index_in_parent(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn is_closed(&self) -> bool {
        self.contains_index(self.parent.identity())
            && self.elems.iter().all(|&a| {
                self.contains_index(self.parent.inv(a))
                    && self.elems.iter().all(|&b| self.contains_index(self.parent.mul(a, b)))
            })
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&e| other.contains_index(e))
    }

    pub fn is_normal_in(&self, other: &Subgroup) -> bool {
        other
            .elems
            .iter()
            .all(|&g| self.elems.iter().all(|&x| self.contains_index(self.parent.conj(g, x))))
    }

    pub fn conjugate_by(&self, g: usize) -> Subgroup {
        let mut elems: Vec<usize> = self.elems.iter().map(|&x| self.parent.conj(g, x)).collect();
        elems.sort_unstable();
        Subgroup { parent: self.parent.clone(), elems }
    }

    pub fn is_conjugate_to(&self, other: &Subgroup) -> bool {
        if self.order() != other.order() {
            return false;
        }
        (0..self.parent.order()).any(|g| &self.conjugate_by(g) == other)
    }

    /// The subgroup as a standalone permutation group on the same points.
    pub fn as_group(&self) -> PermGroup {
        let gens: Vec<Perm> =
            self.elems.iter().map(|&i| self.parent.perm(i).clone()).collect();
        PermGroup::new_bounded(self.parent.degree(), gens, self.order() + 1, None)
            .expect("subgroup closure cannot exceed its own order")
    }

    /// Left coset representatives of this subgroup in the parent.
    pub fn left_coset_reps(&self) -> Vec<usize> {
        let g = &self.parent;
        let mut covered = vec![false; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if !covered[x] {
                reps.push(x);
                for &h in &self.elems {
                    covered[g.mul(x, h)] = true;
                }
            }
        }
        reps
    }

    /// Index of the left coset xH among the cosets listed by
    /// `left_coset_reps`.
    pub fn coset_of(&self, x: usize, reps: &[usize]) -> usize {
        let g = &self.parent;
        for (i, &r) in reps.iter().enumerate() {
            // x in rH iff r^{-1} x in H
            if self.contains_index(g.mul(g.inv(r), x)) {
                return i;
            }
        }
        unreachable!("cosets partition the group")
    }

    /// Elements of the parent centralizing every element of this subgroup.
    pub fn centralizer_elements(&self) -> Vec<usize> {
        let g = &self.parent;
        (0..g.order())
            .filter(|&x| self.elems.iter().all(|&h| g.mul(x, h) == g.mul(h, x)))
            .collect()
    }
}

/// H-K double cosets in G: count and representatives.
pub fn double_cosets(h: &Subgroup, g: &PermGroup, k: &Subgroup) -> Result<Vec<usize>> {
    if h.parent() != g || k.parent() != g {
        return Err(ModRepError::NotSubgroup);
    }
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &a in h.element_indices() {
            for &b in k.element_indices() {
                covered[g.mul(g.mul(a, x), b)] = true;
            }
        }
    }
    Ok(reps)
}

/// Brute-force isomorphism test by generator-image search, for small orders.
pub fn are_isomorphic(g: &PermGroup, h: &PermGroup) -> bool {
    if g.order() != h.order() {
        return false;
    }
    if g.order() == 1 {
        return true;
    }
    let mut g_orders: Vec<usize> = (0..g.order()).map(|i| g.element_order(i)).collect();
    let h_orders: Vec<usize> = (0..h.order()).map(|i| h.element_order(i)).collect();
    let g_sorted = {
        g_orders.sort_unstable();
        g_orders.clone()
    };
    let h_sorted = {
        let mut v = h_orders.clone();
        v.sort_unstable();
        v
    };
    if g_sorted != h_sorted {
        return false;
    }
    // small generating set of g by greedy closure growth
    let mut gens: Vec<usize> = Vec::new();
    let mut cl = vec![g.identity()];
    for x in 0..g.order() {
        if cl.binary_search(&x).is_err() {
            gens.push(x);
            let mut seed = gens.clone();
            seed.push(x);
            cl = g.closure(&seed);
            if cl.len() == g.order() {
                break;
            }
        }
    }
    // recompute unsorted orders for mapping constraints
    let g_orders: Vec<usize> = (0..g.order()).map(|i| g.element_order(i)).collect();
    fn extend(
        g: &PermGroup,
        h: &PermGroup,
        gens: &[usize],
        images: &mut Vec<usize>,
        g_orders: &[usize],
    ) -> bool {
        if images.len() == gens.len() {
            return check_hom(g, h, gens, images);
        }
        let pos = images.len();
        for cand in 0..h.order() {
            if h.element_order(cand) != g_orders[gens[pos]] {
                continue;
            }
            images.push(cand);
            if extend(g, h, gens, images, g_orders) {
                return true;
            }
            images.pop();
        }
        false
    }
    fn check_hom(g: &PermGroup, h: &PermGroup, gens: &[usize], images: &[usize]) -> bool {
        // grow the partial map by closure; fail on any inconsistency
        let mut map: HashMap<usize, usize> = HashMap::new();
        map.insert(g.identity(), h.identity());
        for (&a, &b) in gens.iter().zip(images) {
            map.insert(a, b);
        }
        let mut changed = true;
        while changed {
            changed = false;
            let pairs: Vec<(usize, usize)> = map.iter().map(|(&a, &b)| (a, b)).collect();
            for &(a1, b1) in &pairs {
                for &(a2, b2) in &pairs {
                    let (ap, bp) = (g.mul(a1, a2), h.mul(b1, b2));
                    match map.get(&ap) {
                        Some(&x) if x != bp => return false,
                        Some(_) => {}
                        None => {
                            map.insert(ap, bp);
                            changed = true;
                        }
                    }
                }
            }
        }
        if map.len() != g.order() {
            return false;
        }
        let imgs: HashSet<usize> = map.values().copied().collect();
        imgs.len() == g.order()
    }
    let mut images = Vec::new();
    extend(g, h, &gens, &mut images, &g_orders)
}

fn cycles_to_perm(degree: usize, cycles: &[Vec<usize>]) -> Perm {
    let mut p: Perm = (0..degree as Point).collect();
    for cyc in cycles {
        for w in 0..cyc.len() {
            p[cyc[w]] = cyc[(w + 1) % cyc.len()] as Point;
        }
    }
    p
}

/// Library of named builtin groups.
pub fn builtin(name: &str) -> Option<PermGroup> {
    let mk = |degree: usize, cycles: &[&[usize]], nm: &str| {
        let gens: Vec<Perm> = cycles
            .iter()
            .map(|c| cycles_to_perm(degree, &[c.to_vec()]))
            .collect();
        PermGroup::named(degree, gens, nm).ok()
    };
    match name {
        "1" | "C1" => PermGroup::named(1, vec![], "C1").ok(),
        "C2" => mk(2, &[&[0, 1]], "C2"),
        "C3" => mk(3, &[&[0, 1, 2]], "C3"),
        "C4" => mk(4, &[&[0, 1, 2, 3]], "C4"),
        "C5" => mk(5, &[&[0, 1, 2, 3, 4]], "C5"),
        "C6" => mk(6, &[&[0, 1, 2, 3, 4, 5]], "C6"),
        "C8" => mk(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]], "C8"),
        "C9" => mk(9, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8]], "C9"),
        "V4" | "C2xC2" => PermGroup::named(
            4,
            vec![
                cycles_to_perm(4, &[vec![0, 1], vec![2, 3]]),
                cycles_to_perm(4, &[vec![0, 2], vec![1, 3]]),
            ],
            "V4",
        )
        .ok(),
        "D8" => PermGroup::named(
            4,
            vec![cycles_to_perm(4, &[vec![0, 1, 2, 3]]), cycles_to_perm(4, &[vec![0, 2]])],
            "D8",
        )
        .ok(),
        "Q8" => {
            // regular representation of the quaternion group on
            // {1, -1, i, -i, j, -j, k, -k} = points 0..8
            // left multiplication by i and by j
            let i = vec![2, 3, 1, 0, 7, 6, 4, 5];
            let j = vec![4, 5, 6, 7, 1, 0, 3, 2];
            PermGroup::named(8, vec![i, j], "Q8").ok()
        }
        "S3" => PermGroup::named(
            3,
            vec![cycles_to_perm(3, &[vec![0, 1]]), cycles_to_perm(3, &[vec![0, 1, 2]])],
            "S3",
        )
        .ok(),
        "S4" => PermGroup::named(
            4,
            vec![cycles_to_perm(4, &[vec![0, 1]]), cycles_to_perm(4, &[vec![0, 1, 2, 3]])],
            "S4",
        )
        .ok(),
        "A4" => PermGroup::named(
            4,
            vec![
                cycles_to_perm(4, &[vec![0, 1], vec![2, 3]]),
                cycles_to_perm(4, &[vec![0, 1, 2]]),
            ],
            "A4",
        )
        .ok(),
        "A5" => PermGroup::named(
            5,
            vec![
                cycles_to_perm(5, &[vec![0, 1], vec![2, 3]]),
                cycles_to_perm(5, &[vec![0, 1, 2, 3, 4]]),
            ],
            "A5",
        )
        .ok(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        for (name, order) in [
            ("C2", 2),
            ("C3", 3),
            ("C4", 4),
            ("V4", 4),
            ("Q8", 8),
            ("D8", 8),
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("A5", 60),
        ] {
            let g = builtin(name).unwrap();
            assert_eq!(g.order(), order, "{}", name);
        }
    }

    #[test]
    fn q8_structure() {
        let q8 = builtin("Q8").unwrap();
        assert!(q8.is_p_group(2));
        assert!(!q8.is_abelian());
        // exactly one element of order 2
        let n2 = (0..8).filter(|&i| q8.element_order(i) == 2).count();
        assert_eq!(n2, 1);
        let n4 = (0..8).filter(|&i| q8.element_order(i) == 4).count();
        assert_eq!(n4, 6);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(builtin("C1").unwrap().subgroups().unwrap().len(), 1);
        assert_eq!(builtin("C2").unwrap().subgroups().unwrap().len(), 2);
        // V4: 1, three C2, V4
        assert_eq!(builtin("V4").unwrap().subgroups().unwrap().len(), 5);
        // S3: 1, three C2, C3, S3
        assert_eq!(builtin("S3").unwrap().subgroups().unwrap().len(), 6);
        // D8: 10 subgroups, Q8: 6 subgroups
        assert_eq!(builtin("D8").unwrap().subgroups().unwrap().len(), 10);
        assert_eq!(builtin("Q8").unwrap().subgroups().unwrap().len(), 6);
        // A4: 1, three C2, V4, four C3, A4
        assert_eq!(builtin("A4").unwrap().subgroups().unwrap().len(), 10);
    }

    #[test]
    fn lagrange() {
        for name in ["S3", "A4", "D8", "Q8", "S4"] {
            let g = builtin(name).unwrap();
            for s in g.subgroups().unwrap() {
                assert_eq!(g.order() % s.order(), 0);
                assert!(s.is_closed());
            }
        }
    }

    #[test]
    fn sylow_examples() {
        let s3 = builtin("S3").unwrap();
        assert_eq!(s3.sylow(2).unwrap().order(), 2);
        assert_eq!(s3.sylow(3).unwrap().order(), 3);
        let a4 = builtin("A4").unwrap();
        let v4 = a4.sylow(2).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(are_isomorphic(&v4.as_group(), &builtin("V4").unwrap()));
    }

    #[test]
    fn sectional_rank_examples() {
        assert_eq!(builtin("C1").unwrap().sectional_rank(2).unwrap(), 0);
        assert_eq!(builtin("C2").unwrap().sectional_rank(2).unwrap(), 1);
        assert_eq!(builtin("C4").unwrap().sectional_rank(2).unwrap(), 1);
        assert_eq!(builtin("V4").unwrap().sectional_rank(2).unwrap(), 2);
        assert_eq!(builtin("D8").unwrap().sectional_rank(2).unwrap(), 2);
        // Q8 has a cyclic maximal subgroup structure but Q8/Z = C2 x C2
        assert_eq!(builtin("Q8").unwrap().sectional_rank(2).unwrap(), 2);
        assert_eq!(builtin("C3").unwrap().sectional_rank(3).unwrap(), 1);
        assert!(builtin("S3").unwrap().sectional_rank(2).is_err());
    }

    #[test]
    fn sectional_rank_monotone_under_subgroups() {
        for name in ["C4", "V4", "D8", "Q8", "C8"] {
            let p = builtin(name).unwrap();
            let sp = p.sectional_rank(2).unwrap();
            for q in p.subgroups().unwrap() {
                let sq = q.as_group().sectional_rank(2).unwrap();
                assert!(sq <= sp, "{}: s(Q)={} > s(P)={}", name, sq, sp);
            }
        }
    }

    #[test]
    fn double_coset_examples() {
        let s3 = builtin("S3").unwrap();
        let full = s3.full_subgroup();
        let triv = s3.trivial_subgroup();
        assert_eq!(double_cosets(&full, &s3, &full).unwrap().len(), 1);
        assert_eq!(double_cosets(&triv, &s3, &triv).unwrap().len(), 6);
        // H = <(12)>, K = <(123)>: HK = G so one double coset
        let subs = s3.subgroups().unwrap();
        let h = subs.iter().find(|s| s.order() == 2).unwrap();
        let k = subs.iter().find(|s| s.order() == 3).unwrap();
        assert_eq!(double_cosets(h, &s3, k).unwrap().len(), 1);
    }

    #[test]
    fn isomorphism_distinguishes() {
        assert!(!are_isomorphic(&builtin("D8").unwrap(), &builtin("Q8").unwrap()));
        assert!(!are_isomorphic(&builtin("C4").unwrap(), &builtin("V4").unwrap()));
        assert!(are_isomorphic(&builtin("D8").unwrap(), &builtin("D8").unwrap()));
        // S4's Sylow 2-subgroup is dihedral
        let s4 = builtin("S4").unwrap();
        let syl = s4.sylow(2).unwrap();
        assert!(are_isomorphic(&syl.as_group(), &builtin("D8").unwrap()));
    }

    #[test]
    fn direct_product_and_cosets() {
        let c2 = builtin("C2").unwrap();
        let v4ish = c2.direct_product(&c2).unwrap();
        assert_eq!(v4ish.order(), 4);
        assert!(are_isomorphic(&v4ish, &builtin("V4").unwrap()));
        let s3 = builtin("S3").unwrap();
        let subs = s3.subgroups().unwrap();
        let c3 = subs.iter().find(|s| s.order() == 3).unwrap();
        let reps = c3.left_coset_reps();
        assert_eq!(reps.len(), 2);
        for x in 0..6 {
            let c = c3.coset_of(x, &reps);
            assert!(c < 2);
        }
    }
}
