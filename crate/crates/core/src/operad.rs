//! Finite colored cyclic operads as exhaustively validated lookup tables.
//!
//! An operation with profile (c₀, c₁, …, cₙ) has output color c₀ and inputs
//! c₁..cₙ. The extended symmetric group Σₙ⁺ = Aut{0..n} acts on the right,
//! with the ordinary Σₙ sitting inside as the stabilizer of 0 and the cycle
//! τ_{n+1}(i) = i+1 mod n+1 rotating the output into the inputs.
//!
//! Every axiom — unit laws, associativity and interchange of ∘ᵢ, Σₙ
//! equivariance, the right-action laws, and the cyclic compatibility law in
//! all its branches — is checked over the whole (finite) table.

use std::collections::{BTreeMap, BTreeSet};

pub type Color = String;
pub type OpId = String;
/// A permutation of {0..q-1} stored as its list of images.
pub type Perm = Vec<usize>;

/// All permutations of {0..q-1} in lexicographic order.
pub fn permutations(q: usize) -> Vec<Perm> {
    let mut out = vec![vec![]];
    for _ in 0..q {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..q).filter_map(move |v| {
                    if p.contains(&v) {
                        None
                    } else {
                        let mut next = p.clone();
                        next.push(v);
                        Some(next)
                    }
                })
            })
            .collect();
    }
    out
}

/// The rotation τ_q with τ(i) = i+1 mod q.
pub fn tau(q: usize) -> Perm {
    (0..q).map(|i| (i + 1) % q).collect()
}

pub fn identity_perm(q: usize) -> Perm {
    (0..q).collect()
}

/// (σ∘ρ)(i) = σ(ρ(i)); right actions satisfy x·(σ∘ρ) = (x·σ)·ρ.
pub fn compose_perms(sigma: &Perm, rho: &Perm) -> Perm {
    rho.iter().map(|&i| sigma[i]).collect()
}

pub fn perm_power(sigma: &Perm, k: usize) -> Perm {
    let mut out = identity_perm(sigma.len());
    for _ in 0..k {
        out = compose_perms(sigma, &out);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OperadError {
    #[error("malformed operad data: {0}")]
    MalformedData(String),
    #[error("Σ⁺ tables do not form a right group action: {0}")]
    ActionNotGroupAction(String),
    #[error("operad axiom violated ({law}): {detail}")]
    OperadAxiomViolation { law: String, detail: String },
    #[error("cyclic compatibility violated at (g={g}, i={i}, f={f})")]
    CyclicCompatibilityViolation { g: OpId, i: usize, f: OpId },
    #[error("dagger is not an anti-involution: {0}")]
    NotAnInvolution(String),
    #[error("color mismatch: {0}")]
    ColorMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCyclicOperad {
    pub colors: BTreeSet<Color>,
    /// Output-first profile of every operation.
    pub profiles: BTreeMap<OpId, Vec<Color>>,
    pub units: BTreeMap<Color, OpId>,
    /// Full right-action table: (op of arity n, σ ∈ Σₙ⁺) → op.
    pub act: BTreeMap<(OpId, Perm), OpId>,
    /// Full composition table: (g, i, f) → g ∘ᵢ f for every composable triple.
    pub circ: BTreeMap<(OpId, usize, OpId), OpId>,
}

impl FiniteCyclicOperad {
    pub fn arity(&self, op: &str) -> usize {
        self.profiles[op].len() - 1
    }

    pub fn output(&self, op: &str) -> &Color {
        &self.profiles[op][0]
    }

    pub fn input(&self, op: &str, i: usize) -> &Color {
        &self.profiles[op][i]
    }

    /// All operations with the given output-first profile, in id order.
    pub fn ops_at(&self, profile: &[Color]) -> Vec<&OpId> {
        self.profiles
            .iter()
            .filter(|(_, p)| p.as_slice() == profile)
            .map(|(id, _)| id)
            .collect()
    }

    pub fn apply_act(&self, op: &str, sigma: &Perm) -> Result<OpId, OperadError> {
        self.act
            .get(&(op.to_string(), sigma.clone()))
            .cloned()
            .ok_or_else(|| {
                OperadError::MalformedData(format!("missing act entry ({op}, {sigma:?})"))
            })
    }

    pub fn apply_circ(&self, g: &str, i: usize, f: &str) -> Result<OpId, OperadError> {
        if i < 1 || i > self.arity(g) {
            return Err(OperadError::MalformedData(format!(
                "composition index {i} out of range for {g}"
            )));
        }
        if self.input(g, i) != self.output(f) {
            return Err(OperadError::ColorMismatch(format!(
                "input {i} of {g} is {} but output of {f} is {}",
                self.input(g, i),
                self.output(f)
            )));
        }
        self.circ
            .get(&(g.to_string(), i, f.to_string()))
            .cloned()
            .ok_or_else(|| {
                OperadError::MalformedData(format!("missing circ entry ({g}, {i}, {f})"))
            })
    }

    /// The profile of g ∘ᵢ f: inputs of f spliced into slot i of g.
    fn circ_profile(&self, g: &str, i: usize, f: &str) -> Vec<Color> {
        let pg = &self.profiles[g];
        let pf = &self.profiles[f];
        let mut out = pg[..i].to_vec();
        out.extend(pf[1..].iter().cloned());
        out.extend(pg[i + 1..].iter().cloned());
        out
    }

    /// Exhaustively verifies every axiom; returns the first violation found.
    pub fn validate(&self) -> Result<(), OperadError> {
        self.validate_structure()?;
        self.validate_action()?;
        self.validate_circ_closure()?;
        self.validate_unit_laws()?;
        self.validate_associativity()?;
        self.validate_equivariance()?;
        self.validate_cyclic_law()
    }

    fn validate_structure(&self) -> Result<(), OperadError> {
        for (op, p) in &self.profiles {
            if p.is_empty() {
                return Err(OperadError::MalformedData(format!("{op} has empty profile")));
            }
            for c in p {
                if !self.colors.contains(c) {
                    return Err(OperadError::MalformedData(format!(
                        "{op} uses unknown color {c}"
                    )));
                }
            }
        }
        for c in &self.colors {
            let u = self.units.get(c).ok_or_else(|| {
                OperadError::MalformedData(format!("no unit for color {c}"))
            })?;
            if self.profiles.get(u).map(Vec::as_slice) != Some(&[c.clone(), c.clone()][..]) {
                return Err(OperadError::MalformedData(format!(
                    "unit {u} for {c} does not have profile ({c}; {c})"
                )));
            }
        }
        Ok(())
    }

    fn validate_action(&self) -> Result<(), OperadError> {
        for (op, p) in &self.profiles {
            let q = p.len();
            let perms = permutations(q);
            for sigma in &perms {
                let key = (op.clone(), sigma.clone());
                let res = self.act.get(&key).ok_or_else(|| {
                    OperadError::ActionNotGroupAction(format!(
                        "act not total: missing ({op}, {sigma:?})"
                    ))
                })?;
                let expected: Vec<Color> = sigma.iter().map(|&i| p[i].clone()).collect();
                match self.profiles.get(res) {
                    None => {
                        return Err(OperadError::ActionNotGroupAction(format!(
                            "act image {res} is not an operation"
                        )))
                    }
                    Some(rp) if *rp != expected => {
                        return Err(OperadError::ActionNotGroupAction(format!(
                            "{op}·{sigma:?} = {res} has profile {rp:?}, expected {expected:?}"
                        )))
                    }
                    _ => {}
                }
            }
            if self.apply_act(op, &identity_perm(q))? != *op {
                return Err(OperadError::ActionNotGroupAction(format!(
                    "identity does not fix {op}"
                )));
            }
            for sigma in &perms {
                let once = self.apply_act(op, sigma)?;
                for rho in &perms {
                    let twice = self.apply_act(&once, rho)?;
                    let combined = self.apply_act(op, &compose_perms(sigma, rho))?;
                    if twice != combined {
                        return Err(OperadError::ActionNotGroupAction(format!(
                            "({op}·{sigma:?})·{rho:?} = {twice} but {op}·(σ∘ρ) = {combined}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every composable (g, i, f) triple over the ops that exist.
    fn composable_triples(&self) -> Vec<(OpId, usize, OpId)> {
        let mut out = Vec::new();
        for g in self.profiles.keys() {
            for i in 1..=self.arity(g) {
                for f in self.profiles.keys() {
                    if self.input(g, i) == self.output(f) {
                        out.push((g.clone(), i, f.clone()));
                    }
                }
            }
        }
        out
    }

    fn validate_circ_closure(&self) -> Result<(), OperadError> {
        for (g, i, f) in self.composable_triples() {
            let res = self.apply_circ(&g, i, &f)?;
            let expected = self.circ_profile(&g, i, &f);
            match self.profiles.get(&res) {
                None => {
                    return Err(OperadError::OperadAxiomViolation {
                        law: "closure".into(),
                        detail: format!("{g}∘{i}{f} = {res} is not an operation"),
                    })
                }
                Some(rp) if *rp != expected => {
                    return Err(OperadError::OperadAxiomViolation {
                        law: "profile".into(),
                        detail: format!(
                            "{g}∘{i}{f} = {res} has profile {rp:?}, expected {expected:?}"
                        ),
                    })
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn validate_unit_laws(&self) -> Result<(), OperadError> {
        for g in self.profiles.keys() {
            for i in 1..=self.arity(g) {
                let u = &self.units[self.input(g, i)];
                if self.apply_circ(g, i, u)? != *g {
                    return Err(OperadError::OperadAxiomViolation {
                        law: "right unit".into(),
                        detail: format!("{g}∘{i}{u} ≠ {g}"),
                    });
                }
            }
            let u = &self.units[self.output(g)];
            if self.apply_circ(u, 1, g)? != *g {
                return Err(OperadError::OperadAxiomViolation {
                    law: "left unit".into(),
                    detail: format!("{u}∘1{g} ≠ {g}"),
                });
            }
        }
        Ok(())
    }

    fn validate_associativity(&self) -> Result<(), OperadError> {
        for (g, i, f) in self.composable_triples() {
            let gf = self.apply_circ(&g, i, &f)?;
            let ell = self.arity(&f);
            for j in 1..=self.arity(&gf) {
                for h in self.profiles.keys() {
                    if self.input(&gf, j) != self.output(h) {
                        continue;
                    }
                    let m = self.arity(h);
                    let lhs = self.apply_circ(&gf, j, h)?;
                    let rhs = if j < i {
                        let gh = self.apply_circ(&g, j, h)?;
                        self.apply_circ(&gh, i + m - 1, &f)?
                    } else if j < i + ell {
                        let fh = self.apply_circ(&f, j - i + 1, h)?;
                        self.apply_circ(&g, i, &fh)?
                    } else {
                        let gh = self.apply_circ(&g, j - ell + 1, h)?;
                        self.apply_circ(&gh, i, &f)?
                    };
                    if lhs != rhs {
                        return Err(OperadError::OperadAxiomViolation {
                            law: "associativity".into(),
                            detail: format!("(({g}∘{i}{f})∘{j}{h}) = {lhs} ≠ {rhs}"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// (g·σ) ∘ᵢ f = (g ∘_{σ(i)} f)·σ̃ for σ fixing 0, where σ̃ is σ with the
    /// slot σ(i) blown up to f's arity.
    fn validate_equivariance(&self) -> Result<(), OperadError> {
        for (g, si, f) in self.composable_triples() {
            let k = self.arity(&g);
            let ell = self.arity(&f);
            for sigma in permutations(k + 1) {
                if sigma[0] != 0 {
                    continue;
                }
                // Find i with σ(i) = si so the composite on the left exists.
                let i = sigma.iter().position(|&v| v == si).unwrap();
                let gs = self.apply_act(&g, &sigma)?;
                let lhs = self.apply_circ(&gs, i, &f)?;
                let base = self.apply_circ(&g, si, &f)?;
                let adj = |s: usize| if s < si { s } else { s + ell - 1 };
                let mut blowup: Perm = Vec::with_capacity(k + ell);
                for t in 0..k + ell {
                    let v = if t < i {
                        adj(sigma[t])
                    } else if t < i + ell {
                        si + (t - i)
                    } else {
                        adj(sigma[t - ell + 1])
                    };
                    blowup.push(v);
                }
                let rhs = self.apply_act(&base, &blowup)?;
                if lhs != rhs {
                    return Err(OperadError::OperadAxiomViolation {
                        law: "equivariance".into(),
                        detail: format!("({g}·{sigma:?})∘{i}{f} = {lhs} ≠ {rhs}"),
                    });
                }
            }
        }
        Ok(())
    }

    fn validate_cyclic_law(&self) -> Result<(), OperadError> {
        for (g, i, f) in self.composable_triples() {
            let k = self.arity(&g);
            let ell = self.arity(&f);
            let gf = self.apply_circ(&g, i, &f)?;
            let witness = || OperadError::CyclicCompatibilityViolation {
                g: g.clone(),
                i,
                f: f.clone(),
            };
            if k + ell == 0 {
                continue;
            }
            let lhs = self.apply_act(&gf, &tau(k + ell))?;
            let rhs = if i >= 2 {
                let gt = self.apply_act(&g, &tau(k + 1))?;
                self.apply_circ(&gt, i - 1, &f)?
            } else if ell != 0 {
                let ft = self.apply_act(&f, &tau(ell + 1))?;
                let gt = self.apply_act(&g, &tau(k + 1))?;
                self.apply_circ(&ft, ell, &gt)?
            } else {
                // i = 1, ℓ = 0: (g∘₁f)·τ = (g·τ²)∘ₖf.
                let gt2 = self.apply_act(&g, &perm_power(&tau(k + 1), 2))?;
                self.apply_circ(&gt2, k, &f)?
            };
            if lhs != rhs {
                return Err(witness());
            }
        }
        Ok(())
    }

    /// The orbit sizes of the Σ₂ action on the arity-1 stratum, descending.
    pub fn sigma2_orbit_type(&self) -> Vec<usize> {
        let mut seen: BTreeSet<&OpId> = BTreeSet::new();
        let mut sizes = Vec::new();
        let swap = vec![1, 0];
        for (op, p) in &self.profiles {
            if p.len() != 2 || seen.contains(op) {
                continue;
            }
            let other = self.apply_act(op, &swap).unwrap();
            seen.insert(op);
            if other == *op {
                sizes.push(1);
            } else {
                sizes.push(2);
                seen.insert(self.profiles.keys().find(|k| **k == other).unwrap());
            }
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

/// Builds and validates the monochrome degree-1 cyclic operad determined by a
/// monoid with involution: composition is multiplication and the swap in Σ₁⁺
/// acts by the dagger.
pub fn from_involutive_monoid(
    elements: &[&str],
    unit: &str,
    mult: impl Fn(&str, &str) -> String,
    dagger: impl Fn(&str) -> String,
) -> Result<FiniteCyclicOperad, OperadError> {
    let elems: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
    if !elems.contains(&unit.to_string()) {
        return Err(OperadError::MalformedData(format!("unit {unit} not an element")));
    }
    for x in &elems {
        if dagger(&dagger(x)) != *x {
            return Err(OperadError::NotAnInvolution(format!("({x}††) ≠ {x}")));
        }
        for y in &elems {
            if dagger(&mult(x, y)) != mult(&dagger(y), &dagger(x)) {
                return Err(OperadError::NotAnInvolution(format!(
                    "({x}{y})† ≠ {y}†{x}†"
                )));
            }
        }
    }
    let c = "c".to_string();
    let mut act = BTreeMap::new();
    let mut circ = BTreeMap::new();
    for x in &elems {
        act.insert((x.clone(), vec![0, 1]), x.clone());
        act.insert((x.clone(), vec![1, 0]), dagger(x));
        for y in &elems {
            circ.insert((x.clone(), 1, y.clone()), mult(x, y));
        }
    }
    let op = FiniteCyclicOperad {
        colors: BTreeSet::from([c.clone()]),
        profiles: elems.iter().map(|x| (x.clone(), vec![c.clone(), c.clone()])).collect(),
        units: BTreeMap::from([(c, unit.to_string())]),
        act,
        circ,
    };
    op.validate()?;
    Ok(op)
}

fn klein_mult(x: &str, y: &str) -> String {
    let bit = |a: u8, b: u8| if a == b { '0' } else { '1' };
    let (x, y) = (x.as_bytes(), y.as_bytes());
    format!("{}{}", bit(x[0], y[0]), bit(x[1], y[1]))
}

/// The cyclic operad C: ℤ/2 × ℤ/2 in degree 1, with the Σ₂ swap
/// interchanging 01 and 10.
pub fn example_c() -> FiniteCyclicOperad {
    from_involutive_monoid(
        &["00", "01", "10", "11"],
        "00",
        klein_mult,
        |x| x.chars().rev().collect(),
    )
    .expect("C is a valid cyclic operad")
}

/// The cyclic operad C′: same underlying operad as C but with the trivial
/// Σ₂ action.
pub fn example_c_prime() -> FiniteCyclicOperad {
    from_involutive_monoid(&["00", "01", "10", "11"], "00", klein_mult, |x| x.to_string())
        .expect("C′ is a valid cyclic operad")
}

/// The cyclic operad A: ℤ/2 = {e, x} in degree 1 with the trivial Σ₂ action
/// (its unique cyclic structure).
pub fn example_a() -> FiniteCyclicOperad {
    from_involutive_monoid(
        &["e", "x"],
        "e",
        |a, b| if a == b { "e".into() } else { "x".into() },
        |a| a.to_string(),
    )
    .expect("A is a valid cyclic operad")
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CycMap {
    pub on_colors: BTreeMap<Color, Color>,
    pub on_ops: BTreeMap<OpId, OpId>,
}

impl CycMap {
    /// Checks that the map commutes with units, the Σ⁺ actions, and all ∘ᵢ.
    pub fn is_valid(&self, a: &FiniteCyclicOperad, b: &FiniteCyclicOperad) -> bool {
        let col = |c: &Color| self.on_colors[c].clone();
        let f = |o: &OpId| self.on_ops[o].clone();
        for (op, p) in &a.profiles {
            let img = &self.on_ops[op];
            let expected: Vec<Color> = p.iter().map(col).collect();
            if b.profiles.get(img) != Some(&expected) {
                return false;
            }
        }
        for (c, u) in &a.units {
            if f(u) != b.units[&col(c)] {
                return false;
            }
        }
        for ((op, sigma), res) in &a.act {
            if b.apply_act(&f(op), sigma) != Ok(f(res)) {
                return false;
            }
        }
        for ((g, i, x), res) in &a.circ {
            if b.apply_circ(&f(g), *i, &f(x)) != Ok(f(res)) {
                return false;
            }
        }
        true
    }
}

/// Enumerates all maps of cyclic operads A → B by exhausting color maps and
/// profile-compatible operation maps, keeping the ones that commute with all
/// structure. Results are in canonical (derived Ord) order.
pub fn enumerate_cyc_maps(
    a: &FiniteCyclicOperad,
    b: &FiniteCyclicOperad,
    cfg: &crate::homs::EnumConfig,
) -> Result<Vec<CycMap>, crate::homs::EnumError> {
    let a_colors: Vec<&Color> = a.colors.iter().collect();
    let b_colors: Vec<&Color> = b.colors.iter().collect();
    let color_space = (b_colors.len() as u128).checked_pow(a_colors.len() as u32);
    match color_space {
        Some(n) if n <= cfg.cap => {}
        _ => {
            return Err(crate::homs::EnumError::SizeBoundExceeded {
                space: color_space.unwrap_or(u128::MAX),
                cap: cfg.cap,
            })
        }
    }
    let mut color_maps: Vec<BTreeMap<Color, Color>> = vec![BTreeMap::new()];
    for c in &a_colors {
        color_maps = color_maps
            .into_iter()
            .flat_map(|m| {
                b_colors.iter().map(move |d| {
                    let mut m = m.clone();
                    m.insert((*c).clone(), (*d).clone());
                    m
                })
            })
            .collect();
    }
    let a_ops: Vec<&OpId> = a.profiles.keys().collect();
    let mut out = Vec::new();
    for on_colors in color_maps {
        // Candidate images per op, filtered by transported profile.
        let mut candidates: Vec<Vec<&OpId>> = Vec::with_capacity(a_ops.len());
        let mut space: u128 = 1;
        for op in &a_ops {
            let target: Vec<Color> = a.profiles[*op].iter().map(|c| on_colors[c].clone()).collect();
            let c = b.ops_at(&target);
            space = space.saturating_mul(c.len() as u128);
            candidates.push(c);
        }
        if space > cfg.cap {
            return Err(crate::homs::EnumError::SizeBoundExceeded { space, cap: cfg.cap });
        }
        let mut partial: Vec<BTreeMap<OpId, OpId>> = vec![BTreeMap::new()];
        for (op, cands) in a_ops.iter().zip(&candidates) {
            partial = partial
                .into_iter()
                .flat_map(|m| {
                    cands.iter().map(move |img| {
                        let mut m = m.clone();
                        m.insert((*op).clone(), (*img).clone());
                        m
                    })
                })
                .collect();
        }
        for on_ops in partial {
            let cm = CycMap { on_colors: on_colors.clone(), on_ops };
            if cm.is_valid(a, b) {
                out.push(cm);
            }
        }
    }
    out.sort();
    Ok(out)
}
