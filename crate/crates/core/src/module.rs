//! Finite left modules over a [`Ring`], given by an addition table and an
//! action table `act[r][a] = r·a`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::ideal::LeftIdeal;
use crate::matrix::Matrix;
use crate::ring::{mixed_radix_digits, mixed_radix_index, Ring, RingKind};
use crate::set::{subgroup_sum, ElemSet};
use crate::{Error, Guards, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleKind {
    /// `M_{m x k}(F_q)` over `M_m(F_q)`, row-major base-`q`, first entry
    /// most significant.
    Column {
        k: usize,
    },
    Regular,
    /// `Z/m` over `Z/n` with `m | n`.
    ModM(u32),
    /// Mixed-radix tuples, leftmost summand most significant.
    DirectSum(Vec<Arc<Module>>),
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    Column { k: usize },
    Regular,
    ModM(u32),
    DirectSum(Vec<ModuleSpec>),
    Table { add: Vec<Vec<u32>>, act: Vec<Vec<u32>> },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Module {
    ring: Arc<Ring>,
    order: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    act: Vec<u32>,
    zero: u32,
    kind: ModuleKind,
}

impl core::fmt::Debug for Module {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "Module({} over {}, order {})",
            self.describe(),
            self.ring.describe(),
            self.order
        )
    }
}

impl Module {
    pub fn make(ring: Arc<Ring>, spec: &ModuleSpec, guards: &Guards) -> Result<Module> {
        match spec {
            ModuleSpec::Column { k } => Module::column(ring, *k, guards),
            ModuleSpec::Regular => Ok(Module::regular(ring)),
            ModuleSpec::ModM(m) => Module::mod_m(ring, *m),
            ModuleSpec::DirectSum(parts) => {
                let parts = parts
                    .iter()
                    .map(|p| Module::make(ring.clone(), p, guards).map(Arc::new))
                    .collect::<Result<Vec<_>>>()?;
                Module::direct_sum(ring, parts, guards)
            }
            ModuleSpec::Table { add, act } => Module::from_tables(ring, add, act, guards),
        }
    }

    /// `M_{m x k}(F_q)` acted on by left multiplication.
    pub fn column(ring: Arc<Ring>, k: usize, guards: &Guards) -> Result<Module> {
        let RingKind::Matrix { m, field } = ring.kind().clone() else {
            return Err(Error::Incompatible(format!(
                "column module needs a matrix ring, got {}",
                ring.describe()
            )));
        };
        if k == 0 {
            return Err(Error::Incompatible("column module needs k >= 1".into()));
        }
        let order = (field.order() as u128).checked_pow((m * k) as u32).unwrap_or(u128::MAX);
        guards.check_table("column module order", order)?;
        guards.check_table("action table", order * ring.order() as u128)?;
        let n = order as usize;
        let elems: Vec<Matrix> = (0..n as u64).map(|c| Matrix::decode(field.clone(), m, k, c)).collect();
        let mut add = vec![0; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * n + j] = a.add(b).expect("same shape").encode() as u32;
            }
        }
        let mut act = vec![0; ring.order() * n];
        for r in ring.elements() {
            let rm = ring.as_matrix(r).expect("matrix ring");
            for (j, b) in elems.iter().enumerate() {
                act[r as usize * n + j] = rm.mul(b).expect("m x m times m x k").encode() as u32;
            }
        }
        Ok(Module::assemble(ring, n, add, act, 0, ModuleKind::Column { k }))
    }

    pub fn regular(ring: Arc<Ring>) -> Module {
        let n = ring.order();
        let add = ring.add_table().to_vec();
        let act = ring.mul_table().to_vec();
        let zero = ring.zero();
        Module::assemble(ring, n, add, act, zero, ModuleKind::Regular)
    }

    pub fn mod_m(ring: Arc<Ring>, m: u32) -> Result<Module> {
        let RingKind::ModN(n) = *ring.kind() else {
            return Err(Error::Incompatible(format!(
                "mod_m module needs a Z/n ring, got {}",
                ring.describe()
            )));
        };
        if m == 0 || n % m != 0 {
            return Err(Error::Incompatible(format!("{m} does not divide {n}")));
        }
        let order = m as usize;
        let mut add = vec![0; order * order];
        for a in 0..m {
            for b in 0..m {
                add[(a * m + b) as usize] = (a + b) % m;
            }
        }
        let mut act = vec![0; n as usize * order];
        for r in 0..n {
            for a in 0..m {
                act[(r * m + a) as usize] = ((r as u64 * a as u64) % m as u64) as u32;
            }
        }
        Ok(Module::assemble(ring, order, add, act, 0, ModuleKind::ModM(m)))
    }

    pub fn direct_sum(ring: Arc<Ring>, parts: Vec<Arc<Module>>, guards: &Guards) -> Result<Module> {
        if parts.is_empty() {
            return Err(Error::Incompatible("direct sum needs at least one summand".into()));
        }
        if let Some(p) = parts.iter().find(|p| !same_ring(&p.ring, &ring)) {
            return Err(Error::Incompatible(format!(
                "summand over {} in a direct sum over {}",
                p.ring.describe(),
                ring.describe()
            )));
        }
        let order = parts
            .iter()
            .try_fold(1u128, |acc, p| acc.checked_mul(p.order as u128))
            .unwrap_or(u128::MAX);
        guards.check_table("direct sum order", order)?;
        guards.check_table("action table", order * ring.order() as u128)?;
        let n = order as usize;
        let radices: Vec<usize> = parts.iter().map(|p| p.order).collect();
        let tuples: Vec<Vec<u32>> = (0..n).map(|x| mixed_radix_digits(x, &radices)).collect();
        let mut add = vec![0; n * n];
        for (i, a) in tuples.iter().enumerate() {
            for (j, b) in tuples.iter().enumerate() {
                let s: Vec<u32> = parts.iter().enumerate().map(|(t, p)| p.add(a[t], b[t])).collect();
                add[i * n + j] = mixed_radix_index(&s, &radices) as u32;
            }
        }
        let mut act = vec![0; ring.order() * n];
        for r in ring.elements() {
            for (j, b) in tuples.iter().enumerate() {
                let s: Vec<u32> = parts.iter().enumerate().map(|(t, p)| p.act(r, b[t])).collect();
                act[r as usize * n + j] = mixed_radix_index(&s, &radices) as u32;
            }
        }
        let zero: Vec<u32> = parts.iter().map(|p| p.zero).collect();
        let zero = mixed_radix_index(&zero, &radices) as u32;
        Ok(Module::assemble(ring, n, add, act, zero, ModuleKind::DirectSum(parts)))
    }

    /// `A^n` as a module, with tuple encoding as in [`Module::direct_sum`].
    pub fn power(base: &Arc<Module>, n: usize, guards: &Guards) -> Result<Module> {
        let order = (base.order as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        crate::guard::check("ambient space A^n", order, guards.max_power_order as u128)?;
        Module::direct_sum(base.ring.clone(), vec![base.clone(); n], guards)
    }

    /// A module from explicit tables, validated against the module axioms.
    pub fn from_tables(ring: Arc<Ring>, add: &[Vec<u32>], act: &[Vec<u32>], guards: &Guards) -> Result<Module> {
        let n = add.len();
        if n == 0 {
            return Err(Error::AxiomViolation("empty module".into()));
        }
        guards.check_enum("table module order", n)?;
        if add.iter().any(|r| r.len() != n) {
            return Err(Error::AxiomViolation(format!("addition table is not {n}x{n}")));
        }
        if act.len() != ring.order() || act.iter().any(|r| r.len() != n) {
            return Err(Error::AxiomViolation(format!(
                "action table must be {}x{}",
                ring.order(),
                n
            )));
        }
        let fa: Vec<u32> = add.iter().flatten().copied().collect();
        let fact: Vec<u32> = act.iter().flatten().copied().collect();
        if let Some(&bad) = fa.iter().chain(&fact).find(|&&x| x as usize >= n) {
            return Err(Error::InvalidElement {
                element: bad as u64,
                order: n as u64,
            });
        }
        let at = |a: usize, b: usize| fa[a * n + b] as usize;
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| at(z, x) == x && at(x, z) == x))
            .ok_or_else(|| Error::AxiomViolation("no additive identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| at(a, b) == zero) {
                return Err(Error::AxiomViolation(format!("{a} has no additive inverse")));
            }
            for b in 0..n {
                if at(a, b) != at(b, a) {
                    return Err(Error::AxiomViolation(format!("addition not commutative at ({a},{b})")));
                }
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::AxiomViolation(format!(
                            "addition not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let module = Module::assemble(ring, n, fa, fact, zero as u32, ModuleKind::Table);
        module.check_action()?;
        Ok(module)
    }

    pub(crate) fn from_tables_unchecked(ring: Arc<Ring>, n: usize, add: Vec<u32>, act: Vec<u32>, zero: u32) -> Module {
        Module::assemble(ring, n, add, act, zero, ModuleKind::Table)
    }

    /// Restriction of scalars along a ring homomorphism `proj: ring -> base.ring`.
    pub fn pullback(ring: Arc<Ring>, proj: &[u32], base: &Module) -> Result<Module> {
        if !ring.is_hom_into(&base.ring, proj) {
            return Err(Error::Incompatible(
                "pullback map is not a unital ring homomorphism".into(),
            ));
        }
        let n = base.order;
        let mut act = vec![0; ring.order() * n];
        for r in ring.elements() {
            let s = proj[r as usize];
            act[r as usize * n..(r as usize + 1) * n].copy_from_slice(&base.act[s as usize * n..(s as usize + 1) * n]);
        }
        Ok(Module::assemble(
            ring,
            n,
            base.add.clone(),
            act,
            base.zero,
            ModuleKind::Table,
        ))
    }

    /// A submodule as a module in its own right, together with the
    /// inclusion (new index -> old index).
    pub fn from_submodule(&self, sub: &Submodule) -> (Module, Vec<u32>) {
        let members = sub.members().to_vec();
        let n = members.len();
        let idx = |x: u32| members.binary_search(&x).expect("closed submodule") as u32;
        let mut add = vec![0; n * n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                add[i * n + j] = idx(self.add(a, b));
            }
        }
        let mut act = vec![0; self.ring.order() * n];
        for r in self.ring.elements() {
            for (j, &b) in members.iter().enumerate() {
                act[r as usize * n + j] = idx(self.act(r, b));
            }
        }
        let zero = idx(self.zero);
        (
            Module::assemble(self.ring.clone(), n, add, act, zero, ModuleKind::Table),
            members,
        )
    }

    fn assemble(ring: Arc<Ring>, n: usize, add: Vec<u32>, act: Vec<u32>, zero: u32, kind: ModuleKind) -> Module {
        let mut neg = vec![0; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == zero).expect("additive inverse") as u32;
        }
        Module {
            ring,
            order: n,
            add,
            neg,
            act,
            zero,
            kind,
        }
    }

    /// Exhaustive check of the action axioms.
    pub fn check_action(&self) -> Result<()> {
        let r = &self.ring;
        for a in self.elements() {
            if self.act(r.one(), a) != a {
                return Err(Error::AxiomViolation(format!("1 does not fix {a}")));
            }
        }
        for s in r.elements() {
            if self.act(s, self.zero) != self.zero {
                return Err(Error::AxiomViolation(format!("{s}·0 != 0")));
            }
            for a in self.elements() {
                for b in self.elements() {
                    if self.act(s, self.add(a, b)) != self.add(self.act(s, a), self.act(s, b)) {
                        return Err(Error::AxiomViolation(format!(
                            "action of {s} not additive at ({a},{b})"
                        )));
                    }
                }
                for t in r.elements() {
                    if self.act(r.mul(s, t), a) != self.act(s, self.act(t, a)) {
                        return Err(Error::AxiomViolation(format!("(st)a != s(ta) at ({s},{t},{a})")));
                    }
                    if self.act(r.add(s, t), a) != self.add(self.act(s, a), self.act(t, a)) {
                        return Err(Error::AxiomViolation(format!("(s+t)a != sa+ta at ({s},{t},{a})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn elements(&self) -> core::ops::Range<u32> {
        0..self.order as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn act(&self, r: u32, a: u32) -> u32 {
        self.act[r as usize * self.order + a as usize]
    }

    /// Components of an element of a direct sum.
    pub fn components(&self, a: u32) -> Option<Vec<u32>> {
        match &self.kind {
            ModuleKind::DirectSum(parts) => {
                let radices: Vec<usize> = parts.iter().map(|p| p.order).collect();
                Some(mixed_radix_digits(a as usize, &radices))
            }
            _ => None,
        }
    }

    /// Inverse of [`Module::components`].
    pub fn from_components(&self, parts: &[u32]) -> Option<u32> {
        match &self.kind {
            ModuleKind::DirectSum(ps) if ps.len() == parts.len() => {
                let radices: Vec<usize> = ps.iter().map(|p| p.order).collect();
                Some(mixed_radix_index(parts, &radices) as u32)
            }
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            ModuleKind::Column { k } => match self.ring.kind() {
                RingKind::Matrix { m, field } => format!("M_{{{}x{}}}(F_{})", m, k, field.order()),
                _ => format!("column({k})"),
            },
            ModuleKind::Regular => format!("{} (regular)", self.ring.describe()),
            ModuleKind::ModM(m) => format!("Z/{m}"),
            ModuleKind::DirectSum(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.describe()).collect();
                names.join(" + ")
            }
            ModuleKind::Table => format!("table module of order {}", self.order),
        }
    }

    /// Whether `map` (indexed by elements of `self`) is `R`-linear into `dst`.
    pub fn is_linear_map(&self, dst: &Module, map: &[u32]) -> bool {
        map.len() == self.order
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| map[self.add(a, b) as usize] == dst.add(map[a as usize], map[b as usize]))
                    && self
                        .ring
                        .elements()
                        .all(|r| map[self.act(r, a) as usize] == dst.act(r, map[a as usize]))
            })
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A submodule, stored as its canonically sorted member set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Submodule {
    members: ElemSet,
}

impl Submodule {
    pub(crate) fn from_set(members: ElemSet) -> Self {
        Submodule { members }
    }

    pub fn zero(module: &Module) -> Self {
        Submodule::from_set(ElemSet::from_sorted(vec![module.zero()]))
    }

    pub fn whole(module: &Module) -> Self {
        Submodule::from_set(ElemSet::from_sorted(module.elements().collect()))
    }

    pub fn members(&self) -> &[u32] {
        self.members.members()
    }

    pub fn as_set(&self) -> &ElemSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x)
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn sum(&self, module: &Module, other: &Submodule) -> Submodule {
        Submodule::from_set(subgroup_sum(module.order(), &self.members, &other.members, |a, b| {
            module.add(a, b)
        }))
    }
}

/// `R x`.
pub fn cyclic_submodule(module: &Module, x: u32) -> Submodule {
    let mut mask = vec![false; module.order()];
    for r in module.ring().elements() {
        mask[module.act(r, x) as usize] = true;
    }
    Submodule::from_set(ElemSet::from_mask(&mask))
}

/// Smallest submodule containing `gens`.
pub fn submodule_generated(module: &Module, gens: &[u32]) -> Submodule {
    gens.iter().fold(Submodule::zero(module), |acc, &g| {
        acc.sum(module, &cyclic_submodule(module, g))
    })
}

/// Every submodule, canonically sorted, via cyclic submodules closed under
/// sums.
pub fn submodules(module: &Module, guards: &Guards) -> Result<Vec<Submodule>> {
    guards.check_enum("submodule enumeration", module.order())?;
    let cyclic: BTreeSet<Submodule> = module.elements().map(|x| cyclic_submodule(module, x)).collect();
    let cyclic: Vec<Submodule> = cyclic.into_iter().collect();
    let mut seen: BTreeSet<Submodule> = cyclic.iter().cloned().collect();
    let mut queue = cyclic.clone();
    while let Some(x) = queue.pop() {
        for c in &cyclic {
            let y = x.sum(module, c);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `Ann(a) = { r : r·a = 0 }`.
pub fn annihilator(module: &Module, a: u32) -> LeftIdeal {
    let members = module
        .ring()
        .elements()
        .filter(|&r| module.act(r, a) == module.zero())
        .collect();
    LeftIdeal::from_set(ElemSet::from_sorted(members))
}

/// Generators `g_1, g_2, ...` such that `base + R g_1 + R g_2 + ...` is the
/// whole module (or `within`, when given). Each step greedily takes the
/// smallest-index element that enlarges the span the most.
pub fn generating_chain(module: &Module, base: &Submodule, within: Option<&Submodule>) -> Vec<u32> {
    let target = within.map_or(module.order(), |w| w.len());
    let pool: Vec<u32> = within.map_or_else(|| module.elements().collect(), |w| w.members().to_vec());
    let mut span = base.clone();
    let mut gens = Vec::new();
    while span.len() < target {
        let mut best: Option<(usize, u32, Submodule)> = None;
        for &x in &pool {
            if span.contains(x) {
                continue;
            }
            let s = span.sum(module, &cyclic_submodule(module, x));
            if best.as_ref().is_none_or(|(len, _, _)| s.len() > *len) {
                best = Some((s.len(), x, s));
            }
        }
        let (_, x, s) = best.expect("span is smaller than the target");
        gens.push(x);
        span = s;
    }
    gens
}
