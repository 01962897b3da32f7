//! Stability conditions from class charges: central charges, exact phases and
//! Harder–Narasimhan filtrations of degree-0 modules.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{arg_compare, ExactMatrix, FieldSpec, GaussianRational, Phase, Subspace};
use crate::pmod::{Family, ModuleMap, ProperModule};
use crate::quiver::{ClassPartition, GradedQuiver};

/// Default total-dimension cap for brute-force semistability.
pub const DEFAULT_BRUTEFORCE_CAP: usize = 6;

/// Recorded in every report: only strict degree-0 module maps are checked.
pub const HOM_VANISHING_SCOPE: &str = "Hom-vanishing is checked for strict degree-0 module maps, not derived morphisms";

/// Charges `z_i` on the vertex classes, admissible and monotone along the class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityCondition {
    partition: ClassPartition,
    charges: Vec<GaussianRational>,
}

/// Checks a charge per class (keyed by least vertex id) for admissibility and
/// `s_i ⪯ s_j ⇒ arg z_i ≥ arg z_j`.
pub fn validate_stability(
    q: &GradedQuiver,
    charges: &BTreeMap<String, GaussianRational>,
) -> Result<StabilityCondition> {
    let partition = q.vertex_classes()?;
    let labels: Vec<String> = (0..partition.len()).map(|i| partition.label(q, i)).collect();
    if let Some(k) = charges.keys().find(|k| !labels.contains(k)) {
        return Err(Error::InvalidStability(format!(
            "{k:?} is not the least vertex of a class; classes are {labels:?}"
        )));
    }
    let mut zs = Vec::with_capacity(labels.len());
    for l in &labels {
        let z = charges
            .get(l)
            .ok_or_else(|| Error::InvalidStability(format!("no charge for class {l:?}")))?;
        z.check_admissible()?;
        zs.push(z.clone());
    }
    for &(i, j) in partition.order() {
        if i != j && arg_compare(&zs[i], &zs[j])? == Ordering::Less {
            return Err(Error::Monotonicity {
                lower: labels[i].clone(),
                upper: labels[j].clone(),
            });
        }
    }
    Ok(StabilityCondition { partition, charges: zs })
}

impl StabilityCondition {
    pub fn partition(&self) -> &ClassPartition {
        &self.partition
    }

    pub fn charges(&self) -> &[GaussianRational] {
        &self.charges
    }

    /// The charge of the class containing vertex `v`.
    pub fn vertex_charge(&self, v: usize) -> &GaussianRational {
        &self.charges[self.partition.class_of(v)]
    }

    /// `Z(M) = Σ_v dim M(L_v) · z_{class(v)}`.
    pub fn central_charge(&self, m: &ProperModule) -> Result<GaussianRational> {
        let dims = class_map(m)?;
        Ok(self.charge_of_dims(&dims))
    }

    pub fn charge_of_dims(&self, dims: &[i64]) -> GaussianRational {
        dims.iter().enumerate().fold(GaussianRational::zero(), |acc, (v, &d)| {
            acc.add(&self.vertex_charge(v).scale(d))
        })
    }

    pub fn phase(&self, m: &ProperModule) -> Result<Phase> {
        let z = self.central_charge(m)?;
        if z.is_zero() {
            return Err(Error::ZeroCharge);
        }
        Phase::new(z)
    }
}

/// Per-vertex dimensions of a module in the heart.
pub fn class_map(m: &ProperModule) -> Result<Vec<i64>> {
    require_heart(m)?;
    Ok((0..m.quiver().num_vertices()).map(|v| m.dim(v, 0) as i64).collect())
}

fn require_heart(m: &ProperModule) -> Result<()> {
    match m.supp_degrees().as_slice() {
        [] | [0] => Ok(()),
        ds => Err(Error::Precondition(format!(
            "heart requires degree-0 modules, found degrees {ds:?}"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HNFactor {
    pub module: ProperModule,
    pub charge: GaussianRational,
    pub phase: Phase,
    /// Labels of the classes merged into this factor.
    pub classes: Vec<String>,
}

/// `0 = F_0 ⊂ F_1 ⊂ … ⊂ F_k = M` with `F_i / F_{i−1}` the `i`-th factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HNReport {
    pub factors: Vec<HNFactor>,
    /// `F_i` for `i = 1..=k`.
    pub filtration: Vec<ProperModule>,
    /// Inclusions `F_i → M`.
    pub inclusions: Vec<ModuleMap>,
    pub scope: &'static str,
}

/// The class tower reordered by decreasing phase, with equal-phase neighbours merged.
pub fn hn_filtration(sigma: &StabilityCondition, m: &ProperModule) -> Result<HNReport> {
    require_heart(m)?;
    let q = m.quiver();
    let part = &sigma.partition;
    let mut supported: Vec<usize> = m.support_vertices().into_iter().map(|v| part.class_of(v)).collect();
    supported.sort_unstable();
    supported.dedup();
    let mut order = part.linear_extension_of(&supported);
    // Stable sort keeps ⪯-comparable classes in order, since their charges are monotone.
    order.sort_by(|&i, &j| arg_compare(&sigma.charges[j], &sigma.charges[i]).expect("admissible charges"));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for c in order {
        match groups.last_mut() {
            Some(g) if arg_compare(&sigma.charges[g[0]], &sigma.charges[c])? == Ordering::Equal => g.push(c),
            _ => groups.push(vec![c]),
        }
    }
    let mut factors = Vec::new();
    let mut filtration = Vec::new();
    let mut inclusions = Vec::new();
    let mut below: Vec<usize> = Vec::new();
    for g in groups {
        let verts: Vec<usize> = g.iter().flat_map(|&c| part.classes()[c].iter().copied()).collect();
        let prev = m.vertex_family(&below);
        below.extend(verts.iter().copied());
        let fam = m.vertex_family(&below);
        if !m.family_is_closed(&fam) {
            return Err(Error::InvalidStability(
                "filtration step is not a submodule; charges are not monotone".into(),
            ));
        }
        let (f_i, incl) = m.submodule_on(&fam);
        let rest = m.quotient_by_family(&prev);
        let factor = rest.submodule_on(&rest.vertex_family(&verts)).0;
        let charge = sigma.central_charge(&factor)?;
        factors.push(HNFactor {
            phase: Phase::new(charge.clone())?,
            charge,
            module: factor,
            classes: g.iter().map(|&c| part.label(q, c)).collect(),
        });
        filtration.push(f_i);
        inclusions.push(incl);
    }
    Ok(HNReport {
        factors,
        filtration,
        inclusions,
        scope: HOM_VANISHING_SCOPE,
    })
}

/// Every subspace of `F_p^d`, by enumerating reduced row echelon forms.
pub fn enumerate_subspaces(field: FieldSpec, d: usize) -> Result<Vec<Subspace>> {
    let elems = field
        .elements()
        .ok_or_else(|| Error::Unsupported("subspace enumeration needs a finite field".into()))?;
    let mut out = Vec::new();
    for mask in 0u32..(1 << d) {
        let pivots: Vec<usize> = (0..d).filter(|&i| mask & (1 << i) != 0).collect();
        // free entries: row r, column c > pivots[r] with c not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..d).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = elems.len().pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows = ExactMatrix::zeros(field, pivots.len(), d);
            for (r, &p) in pivots.iter().enumerate() {
                rows.set(r, p, field.one());
            }
            for &(r, c) in &free {
                rows.set(r, c, elems[code % elems.len()].clone());
                code /= elems.len();
            }
            out.push(Subspace::span(&rows.transpose()));
        }
    }
    Ok(out)
}

/// Exhaustively checks `φ(F) ≤ φ(M)` over all nonzero submodules `F` of a degree-0 module
/// over a prime field with total dimension at most `cap`.
pub fn is_semistable_bruteforce(sigma: &StabilityCondition, m: &ProperModule, cap: usize) -> Result<bool> {
    require_heart(m)?;
    if !matches!(m.field(), FieldSpec::Prime(_)) {
        return Err(Error::Unsupported("brute force needs a prime field".into()));
    }
    if m.total_dim() > cap {
        return Err(Error::BudgetExceeded(cap));
    }
    let top = sigma.phase(m)?;
    let verts = m.support_vertices();
    let choices: Vec<Vec<Subspace>> = verts
        .iter()
        .map(|&v| enumerate_subspaces(m.field(), m.dim(v, 0)))
        .collect::<Result<_>>()?;
    let mut chosen: Family = Family::new();
    Ok(search(sigma, m, &verts, &choices, 0, &mut chosen, &top))
}

fn search(
    sigma: &StabilityCondition,
    m: &ProperModule,
    verts: &[usize],
    choices: &[Vec<Subspace>],
    i: usize,
    chosen: &mut Family,
    top: &Phase,
) -> bool {
    if i == verts.len() {
        if chosen.values().all(Subspace::is_zero) || !m.family_is_closed(chosen) {
            return true;
        }
        let mut dims = vec![0i64; m.quiver().num_vertices()];
        for (&(v, _), s) in chosen.iter() {
            dims[v] = s.dim() as i64;
        }
        let z = sigma.charge_of_dims(&dims);
        return Phase::new(z).map(|p| p <= *top).unwrap_or(true);
    }
    for s in &choices[i] {
        chosen.insert((verts[i], 0), s.clone());
        if partial_closed(m, chosen) && !search(sigma, m, verts, choices, i + 1, chosen, top) {
            return false;
        }
    }
    chosen.remove(&(verts[i], 0));
    true
}

/// Closure constraints among the vertices chosen so far.
fn partial_closed(m: &ProperModule, chosen: &Family) -> bool {
    let q = m.quiver();
    m.blocks().iter().all(|(&(g, t), block)| {
        let (a, b) = g.ends(q);
        match (chosen.get(&(b, t)), chosen.get(&(a, t + g.degree(q)))) {
            (Some(src), Some(dst)) => dst.contains(&src.image_under(block)),
            _ => true,
        }
    })
}
