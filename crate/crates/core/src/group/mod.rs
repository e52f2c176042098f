//! Finite groups materialized as full Cayley tables, and the subgroup
//! computations needed to state the hypotheses on `(G, p)`: `O_p(G)`,
//! centralizers and normalizers, Sylow subgroups, admissibility
//! (`C_G(O_p(G)) <= O_p(G)`), `N`-class orbits and quotients.
//!
//! Element `0` is always the identity. Subgroups are stored as sorted index
//! sets relative to the group they were computed in.

mod spec;

pub use spec::{load_group, GroupKind, GroupSpec, DEFAULT_ORDER_CAP};

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{is_prime, p_part_exponent};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    cayley: Vec<usize>,
    inv: Vec<usize>,
    generators: Vec<usize>,
    element_orders: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Builds and validates a group from an explicit multiplication table.
    ///
    /// The identity is moved to index 0 if the table places it elsewhere.
    /// Associativity is checked exhaustively.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NonGroup("empty table".into()));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::NonGroup("table is not square".into()));
            }
            if row.iter().any(|&x| x >= n) {
                return Err(Error::NonGroup("entry out of range".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NonGroup("no two-sided identity".into()))?;
        // relabel so the identity sits at 0
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut cayley = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                cayley[relabel(a) * n + relabel(b)] = relabel(table[a][b]);
            }
        }
        let labels = (0..n).map(|i| format!("e{i}")).collect();
        Self::finish(name, n, cayley, labels, None)
    }

    /// Generates the permutation group on `0..degree` spanned by `gens`.
    ///
    /// Products act on the right: `x^(ab) = (x^a)^b`.
    pub fn from_permutations(
        name: &str,
        degree: usize,
        gens: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self> {
        for g in gens {
            if g.len() != degree {
                return Err(Error::Input(format!(
                    "permutation has {} images, degree is {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::Input("generator is not a permutation".into()));
                }
                seen[x] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index = std::collections::HashMap::new();
        index.insert(identity, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let prod: Vec<usize> = elements[i].iter().map(|&x| g[x]).collect();
                if !index.contains_key(&prod) {
                    if elements.len() >= cap {
                        return Err(Error::ClosureOverflow { cap });
                    }
                    index.insert(prod.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }
        let n = elements.len();
        let mut cayley = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = elements[a].iter().map(|&x| elements[b][x]).collect();
                cayley[a * n + b] = index[&prod];
            }
        }
        let labels = elements.iter().map(|p| cycle_notation(p)).collect();
        let gen_idx: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        Self::finish(name, n, cayley, labels, Some(gen_idx))
    }

    fn finish(
        name: &str,
        n: usize,
        cayley: Vec<usize>,
        labels: Vec<String>,
        generators: Option<Vec<usize>>,
    ) -> Result<Self> {
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if cayley[a * n + b] == 0 {
                    if cayley[b * n + a] != 0 {
                        return Err(Error::NonGroup(format!("{b} is only a one-sided inverse")));
                    }
                    inv[a] = b;
                    break;
                }
            }
            if inv[a] == usize::MAX {
                return Err(Error::NonGroup(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = cayley[a * n + b];
                for c in 0..n {
                    if cayley[ab * n + c] != cayley[a * n + cayley[b * n + c]] {
                        return Err(Error::NonGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        let mut group = FiniteGroup {
            name: name.to_string(),
            order: n,
            cayley,
            inv,
            generators: Vec::new(),
            element_orders: Vec::new(),
            labels,
        };
        group.element_orders = (0..n).map(|g| group.compute_order(g)).collect();
        group.generators = match generators {
            Some(g) => {
                let mut g: Vec<usize> = g.into_iter().filter(|&x| x != 0).collect();
                g.dedup();
                g
            }
            None => group.greedy_generators(&(0..n).collect::<Vec<_>>()),
        };
        if group.closure(&group.generators).len() != n {
            return Err(Error::NonGroup(
                "generators do not generate the table".into(),
            ));
        }
        Ok(group)
    }

    pub fn trivial(name: &str) -> Self {
        Self::finish(name, 1, vec![0], vec!["()".into()], Some(vec![])).expect("trivial group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    /// Row-major multiplication table; entry `a * n + b` is `a * b`.
    pub fn cayley(&self) -> &[usize] {
        &self.cayley
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g^h = h^-1 g h`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv[h], g), h)
    }

    pub fn pow(&self, g: usize, e: usize) -> usize {
        let mut acc = 0;
        let mut base = g;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.element_orders[g]
    }

    fn compute_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Exponent of the group (lcm of element orders).
    pub fn exponent(&self) -> usize {
        self.element_orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }

    /// Sorted closure of a set under multiplication (always contains 1).
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    /// A small generating set for the subgroup formed by `members`, chosen
    /// greedily by increasing index.
    fn greedy_generators(&self, members: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &m in members {
            if span.binary_search(&m).is_err() {
                gens.push(m);
                span = self.closure(&gens);
                if span.len() == members.len() {
                    break;
                }
            }
        }
        gens
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        Subgroup {
            members: self.closure(gens),
        }
    }

    /// Validates that `members` is a subgroup.
    pub fn subgroup_from_members(&self, members: &[usize]) -> Result<Subgroup> {
        let mut m: Vec<usize> = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.first() != Some(&0) || m.iter().any(|&x| x >= self.order) {
            return Err(Error::Input("subgroup must contain the identity".into()));
        }
        for &a in &m {
            for &b in &m {
                if m.binary_search(&self.mul(a, b)).is_err() {
                    return Err(Error::Input("set is not closed under products".into()));
                }
            }
        }
        Ok(Subgroup { members: m })
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators
            .iter()
            .all(|&g| h.members.iter().all(|&x| h.contains(self.conj(x, g))))
    }

    pub fn is_p_group(&self, h: &Subgroup, p: u64) -> bool {
        is_power_of(h.order() as u64, p)
    }

    /// Elementwise centralizer of an arbitrary subset.
    pub fn centralizer(&self, set: &[usize]) -> Subgroup {
        let members = (0..self.order)
            .filter(|&g| set.iter().all(|&s| self.mul(g, s) == self.mul(s, g)))
            .collect();
        Subgroup { members }
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let gens = h.generators(self);
        let members = (0..self.order)
            .filter(|&g| gens.iter().all(|&x| h.contains(self.conj(x, g))))
            .collect();
        Subgroup { members }
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.generators)
    }

    /// Conjugate subgroup `H^g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut members: Vec<usize> = h.members.iter().map(|&x| self.conj(x, g)).collect();
        members.sort_unstable();
        Subgroup { members }
    }

    /// A Sylow p-subgroup, grown from the trivial group by adjoining
    /// normalizing elements while the result stays a p-group.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let target = p.pow(p_part_exponent(self.order as u64, p)) as usize;
        let mut h = self.trivial_subgroup();
        while h.order() < target {
            let norm = self.normalizer(&h);
            let mut grown = None;
            for &g in &norm.members {
                if h.contains(g) || !is_power_of(self.element_order(g) as u64, p) {
                    continue;
                }
                let mut gens = h.generators(self);
                gens.push(g);
                let cand = self.subgroup_generated(&gens);
                if is_power_of(cand.order() as u64, p) {
                    grown = Some(cand);
                    break;
                }
            }
            h = grown.expect("a p-subgroup below Sylow order has a proper p-overgroup");
        }
        h
    }

    /// Largest normal p-subgroup: the intersection of the conjugates of a
    /// Sylow p-subgroup.
    pub fn o_p(&self, p: u64) -> Subgroup {
        let sylow = self.sylow(p);
        let mut members = sylow.members.clone();
        for g in 0..self.order {
            let conj = self.conjugate_subgroup(&sylow, g);
            members.retain(|x| conj.contains(*x));
        }
        Subgroup { members }
    }

    /// Tests `C_G(O_p(G)) <= O_p(G)`.
    pub fn is_admissible(&self, p: u64) -> Admissibility {
        let n = self.o_p(p);
        let cent = self.centralizer(&n.members);
        let witness = cent.members.iter().copied().find(|&g| !n.contains(g));
        Admissibility {
            admissible: witness.is_none(),
            n,
            witness,
        }
    }

    /// `{g^x : x in N}`, sorted.
    pub fn n_class_orbit(&self, n: &Subgroup, g: usize) -> Result<Vec<usize>> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal(self.name.clone()));
        }
        Ok(self.orbit_unchecked(n, g))
    }

    pub(crate) fn orbit_unchecked(&self, n: &Subgroup, g: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = n.members.iter().map(|&x| self.conj(g, x)).collect();
        set.into_iter().collect()
    }

    /// Partition of `G` into `N`-orbits under conjugation, ordered by least
    /// element. The first orbit is `{1}`.
    pub fn n_class_partition(&self, n: &Subgroup) -> Result<Vec<Vec<usize>>> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal(self.name.clone()));
        }
        Ok(self.orbit_partition(n))
    }

    /// Orbits of conjugation by the elements of `h` (no normality required).
    pub fn orbit_partition(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut orbits = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let orbit = self.orbit_unchecked(h, g);
            for &x in &orbit {
                seen[x] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        self.orbit_partition(&self.whole())
    }

    pub fn special_sets(&self, p: u64) -> SpecialSets {
        let involutions = (1..self.order)
            .filter(|&g| self.element_orders[g] == 2)
            .collect();
        let p_prime = (0..self.order)
            .filter(|&g| !(self.element_orders[g] as u64).is_multiple_of(p))
            .collect();
        SpecialSets {
            involutions,
            p_prime,
        }
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their least
    /// element, so the identity coset is 0.
    pub fn quotient_by(&self, k: &Subgroup) -> Result<QuotientMap> {
        if !self.is_normal(k) {
            return Err(Error::NotNormal(self.name.clone()));
        }
        let mut projection = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if projection[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &x in &k.members {
                projection[self.mul(g, x)] = idx;
            }
        }
        let table: Vec<Vec<usize>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| projection[self.mul(a, b)]).collect())
            .collect();
        let mut quotient = FiniteGroup::from_table(&format!("{}/K", self.name), table)?;
        for (i, &r) in reps.iter().enumerate() {
            quotient.labels[i] = format!("{}K", self.labels[r]);
        }
        Ok(QuotientMap {
            kernel: k.clone(),
            quotient,
            projection,
            representatives: reps,
        })
    }

    /// Validates the group axioms exhaustively (used by catalog validation).
    pub fn validate(&self) -> Result<()> {
        let table: Vec<Vec<usize>> = (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect();
        FiniteGroup::from_table(&self.name, table).map(|_| ())
    }

    pub fn p_elements(&self, p: u64) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| is_power_of(self.element_orders[g] as u64, p))
            .collect()
    }
}

/// Result of the admissibility test for `(G, p)`.
#[derive(Debug, Clone)]
pub struct Admissibility {
    pub admissible: bool,
    /// `O_p(G)`, the candidate `N`.
    pub n: Subgroup,
    /// An element of `C_G(N)` outside `N`, when admissibility fails.
    pub witness: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialSets {
    pub involutions: Vec<usize>,
    pub p_prime: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Deterministic small generating set (greedy by index).
    pub fn generators(&self, group: &FiniteGroup) -> Vec<usize> {
        group.greedy_generators(&self.members)
    }
}

#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub kernel: Subgroup,
    pub quotient: FiniteGroup,
    /// `projection[g]` is the coset index of `g`.
    pub projection: Vec<usize>,
    /// Least element of each coset.
    pub representatives: Vec<usize>,
}

impl QuotientMap {
    pub fn project(&self, g: usize) -> usize {
        self.projection[g]
    }
}

pub(crate) fn is_power_of(n: u64, p: u64) -> bool {
    debug_assert!(is_prime(p));
    let mut n = n;
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = perm[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
