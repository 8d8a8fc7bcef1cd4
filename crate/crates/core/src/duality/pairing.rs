//! The substitution pairing `T/T_0 x K` and the transgression pairing
//! `T/T_0 x Ker(inf: A -> H^2(G))`.

use serde::Serialize;

use super::triple::TripleKind;
use crate::cohomology::{
    abelian_structure, invariants_h1_with, ClassFrame, DegreeTwoData, InvariantCharacters,
    Transgression, DEFAULT_H2_CAP,
};
use crate::error::{Error, Result};
use crate::group::{commutator_subgroup, next_term, power_subgroup, quotient, FiniteGroup, GroupHom, Subgroup};
use crate::zq::{pairing_perfection, AbGroupPresentation, Modulus, PairingReport, Submodule, ZqMatrix};

/// `T/T_0` as a `Z/q`-module: a presentation on lifts of the generators of
/// the quotient, and the coordinates of every element of `T`.
#[derive(Clone, Debug)]
pub struct LayerModule {
    pub presentation: AbGroupPresentation,
    /// Elements of `G` lifting the presentation generators.
    pub lifts: Vec<usize>,
    coords: Vec<Option<Vec<u32>>>,
}

impl LayerModule {
    pub fn new(g: &FiniteGroup, t: &Subgroup, t0: &Subgroup, modulus: Modulus) -> Result<Self> {
        if !t0.is_subgroup_of(t) {
            return Err(Error::Precondition("T_0 is not contained in T".into()));
        }
        let (tg, emb) = t.as_group(g)?;
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &x) in emb.iter().enumerate() {
            pos[x] = i;
        }
        let inner: Vec<usize> = t0.members().iter().map(|&x| pos[x]).collect();
        let t0_in = Subgroup::from_members(&tg, &inner)?;
        let qd = quotient(&tg, &t0_in)?;
        let st = abelian_structure(&qd.quotient, modulus)
            .map_err(|e| Error::Precondition(format!("T/T_0 is not an abelian group of exponent dividing q: {e}")))?;
        let lifts = qd
            .quotient
            .generators()
            .iter()
            .map(|&c| emb[qd.representatives[c]])
            .collect();
        let mut coords = vec![None; g.order()];
        for (i, &x) in emb.iter().enumerate() {
            coords[x] = Some(st.coords[qd.projection.apply(i)].clone());
        }
        Ok(LayerModule {
            presentation: st.presentation,
            lifts,
            coords,
        })
    }

    /// Coordinates of an element of `T` over the lifted generators.
    pub fn coords(&self, x: usize) -> Option<&[u32]> {
        self.coords[x].as_deref()
    }

    pub fn log_order(&self) -> u32 {
        self.presentation.log_order()
    }
}

/// Checks `T_0 ≤ T ≤ G^(2)`, normality, and `T^q [T, G] ≤ T_0`.
pub fn validate_layers(g: &FiniteGroup, t: &Subgroup, t0: &Subgroup, modulus: Modulus) -> Result<()> {
    if !t.is_normal_in(g) || !t0.is_normal_in(g) {
        return Err(Error::NotNormal("T and T_0 must be normal in G".into()));
    }
    let level2 = next_term(g, modulus, &Subgroup::whole(g));
    if !t.is_subgroup_of(&level2) {
        return Err(Error::Precondition("T is not contained in G^(2)".into()));
    }
    if !t0.is_subgroup_of(t) {
        return Err(Error::Precondition("T_0 is not contained in T".into()));
    }
    let floor = power_subgroup(g, t, modulus.q() as u64).join(g, &commutator_subgroup(g, t, &Subgroup::whole(g)));
    if !floor.is_subgroup_of(t0) {
        return Err(Error::Precondition("T^q[T,G] is not contained in T_0".into()));
    }
    Ok(())
}

/// `K = Ker(H^1(T)^G -> H^1(T_0))`: invariant characters vanishing on `T_0`.
pub fn k_of(g: &FiniteGroup, t: &Subgroup, t0: &Subgroup, modulus: Modulus) -> Result<InvariantCharacters> {
    validate_layers(g, t, t0, modulus)?;
    invariants_h1_with(g, t, modulus, t0.generators())
}

/// A pairing on `T/T_0` that may fail to descend from `T`.
#[derive(Clone, Debug, Serialize)]
pub struct LayerPairing {
    /// Every right-hand character vanishes on `T_0`.
    pub well_defined: bool,
    pub perfect: bool,
    pub report: Option<PairingReport>,
    pub left_log: u32,
    pub right_log: u32,
}

fn layer_pairing(
    layer: &LayerModule,
    t0: &Subgroup,
    inv: &InvariantCharacters,
    characters: &[Vec<u32>],
    right: &AbGroupPresentation,
    right_labels: Vec<String>,
) -> Result<LayerPairing> {
    let md = right.modulus();
    let left_log = layer.log_order();
    let right_log = right.log_order();
    let well_defined = characters
        .iter()
        .all(|psi| t0.generators().iter().all(|&x| inv.eval(psi, x) == 0));
    if !well_defined {
        return Ok(LayerPairing {
            well_defined,
            perfect: false,
            report: None,
            left_log,
            right_log,
        });
    }
    let rows: Vec<Vec<u32>> = layer
        .lifts
        .iter()
        .map(|&x| characters.iter().map(|psi| inv.eval(psi, x)).collect())
        .collect();
    let mat = ZqMatrix::from_residue_rows(md, characters.len(), &rows);
    let left_labels = (1..=layer.lifts.len()).map(|i| format!("t{i}")).collect();
    match pairing_perfection(&mat, &layer.presentation, right) {
        Ok(r) => Ok(LayerPairing {
            well_defined,
            perfect: r.perfect,
            report: Some(r.with_labels(left_labels, right_labels)),
            left_log,
            right_log,
        }),
        Err(Error::Incompatible(_)) => Ok(LayerPairing {
            well_defined: false,
            perfect: false,
            report: None,
            left_log,
            right_log,
        }),
        Err(e) => Err(e),
    }
}

/// `(sigma T_0, psi) -> psi(sigma)` on `T/T_0 x K`.
pub fn pairing_a(g: &FiniteGroup, t: &Subgroup, t0: &Subgroup, modulus: Modulus) -> Result<LayerPairing> {
    let k = k_of(g, t, t0, modulus)?;
    let layer = LayerModule::new(g, t, t0, modulus)?;
    let gens = k.module().generators().to_vec();
    let (right, _) = AbGroupPresentation::subquotient(k.module(), &Submodule::zero(modulus, k.module().dim()));
    let labels = (1..=gens.len()).map(|i| format!("psi{i}")).collect();
    layer_pairing(&layer, t0, &k, &gens, &right, labels)
}

/// Everything needed to test whether a submodule `A` of `H^2(G/T)` is dual
/// to `(T, T_0)`. Classes on `G/T` are vectors over `classes`.
#[derive(Clone, Debug)]
pub struct DualitySetting {
    pub modulus: Modulus,
    pub group: FiniteGroup,
    pub t: Subgroup,
    pub t0: Subgroup,
    pub classes: ClassFrame,
    /// `A`, saturated by the frame relations.
    pub a: Submodule,
    /// `Ker(inf: H^2(G/T) -> H^2(G))`.
    pub kernel: Submodule,
    pub trg: Transgression,
    /// Transgressions of the generators of `H^1(T)^G`, as frame vectors.
    pub images: Vec<Vec<u32>>,
}

impl DualitySetting {
    /// `T = G^(2)`, with classes in the frame of `data`.
    pub fn from_data(data: &DegreeTwoData, t0: &Subgroup, a: &Submodule) -> Result<Self> {
        let g = &data.group;
        validate_layers(g, &data.level2, t0, data.modulus)?;
        let trg = Transgression::new(g, &data.level2, data.modulus)?;
        let images = trg.images(&data.classes)?;
        Ok(DualitySetting {
            modulus: data.modulus,
            group: g.clone(),
            t: data.level2.clone(),
            t0: t0.clone(),
            classes: data.classes.clone(),
            a: data.classes.saturate(a),
            kernel: data.kernel.clone(),
            trg,
            images,
        })
    }

    /// The data of a duality triple on `G`.
    pub fn for_triple(g: &FiniteGroup, modulus: Modulus, triple: TripleKind) -> Result<(Self, DegreeTwoData)> {
        let data = DegreeTwoData::new(g, modulus)?;
        let setting = Self::for_triple_with(&data, triple)?;
        Ok((setting, data))
    }

    pub fn for_triple_with(data: &DegreeTwoData, triple: TripleKind) -> Result<Self> {
        let t0 = triple.t0(&data.group, data.modulus);
        Self::from_data(data, &t0, &triple.a_module(data))
    }

    /// Arbitrary normal `T ≤ G^(2)` with a frame from the full `H^2(G/T)`;
    /// `a` lists frame vectors spanning `A` (all of `H^2` when `None`).
    pub fn general(
        g: &FiniteGroup,
        t: &Subgroup,
        t0: &Subgroup,
        modulus: Modulus,
        a: Option<&[Vec<u32>]>,
        cap: Option<usize>,
    ) -> Result<Self> {
        validate_layers(g, t, t0, modulus)?;
        let trg = Transgression::new(g, t, modulus)?;
        let classes = ClassFrame::full(trg.base(), modulus, cap.unwrap_or(DEFAULT_H2_CAP))?;
        let images = trg.images(&classes)?;
        let kernel = classes.inflation_kernel(g, &trg.quotient.projection)?;
        let a = match a {
            Some(v) => classes.span(v),
            None => classes.everything(),
        };
        Ok(DualitySetting {
            modulus,
            group: g.clone(),
            t: t.clone(),
            t0: t0.clone(),
            classes,
            a,
            kernel,
            trg,
            images,
        })
    }

    /// The same `(G, T, A)` with another `T_0`.
    pub fn with_t0(&self, t0: &Subgroup) -> Result<Self> {
        validate_layers(&self.group, &self.t, t0, self.modulus)?;
        let mut s = self.clone();
        s.t0 = t0.clone();
        Ok(s)
    }

    /// The same `(G, T, T_0)` with another `A`.
    pub fn with_a(&self, a: &Submodule) -> Self {
        let mut s = self.clone();
        s.a = self.classes.saturate(a);
        s
    }

    pub fn projection(&self) -> &GroupHom {
        &self.trg.quotient.projection
    }

    /// `Ker(inf: A -> H^2(G))`, relations included.
    pub fn a_kernel(&self) -> Submodule {
        self.a.intersection(&self.kernel)
    }

    /// Canonical generators of `A ∩ trg(H^1(T)^G)` that are nonzero classes.
    pub fn a0(&self) -> Vec<Vec<u32>> {
        let rel = self.classes.relations();
        self.a_kernel()
            .generators()
            .iter()
            .filter(|v| !rel.contains(v))
            .cloned()
            .collect()
    }

    /// A character `psi` with `trg(psi) = phi`.
    pub fn trg_inverse(&self, phi: &[u32]) -> Result<Vec<u32>> {
        self.trg
            .preimage(&self.classes, &self.images, phi)?
            .ok_or_else(|| Error::Precondition("class is not in the image of transgression".into()))
    }

    /// `psi(x)` for `x` in `T`.
    pub fn eval(&self, psi: &[u32], x: usize) -> u32 {
        self.trg.invariants.eval(psi, x)
    }

    /// Inflation kernel `H^2(G/T) -> H^2(G/N)` for normal `N ≤ T`.
    pub fn kernel_to(&self, n: &Subgroup) -> Result<Submodule> {
        if !n.is_subgroup_of(&self.t) {
            return Err(Error::Precondition("normal subgroup not inside T".into()));
        }
        let qn = quotient(&self.group, n)?;
        let images = qn
            .representatives
            .iter()
            .map(|&r| self.projection().apply(r))
            .collect();
        let hom = GroupHom::new(&qn.quotient, self.trg.base(), images)?;
        self.classes.inflation_kernel(&qn.quotient, &hom)
    }

    pub fn layer(&self) -> Result<LayerModule> {
        LayerModule::new(&self.group, &self.t, &self.t0, self.modulus)
    }
}

/// `<sigma T_0, phi> = (trg^-1 phi)(sigma)` on `T/T_0 x Ker(inf: A -> H^2(G))`.
pub fn pairing_b(setting: &DualitySetting) -> Result<LayerPairing> {
    let layer = setting.layer()?;
    let (right, gens) = AbGroupPresentation::subquotient(&setting.a_kernel(), setting.classes.relations());
    let characters: Vec<Vec<u32>> = gens.iter().map(|phi| setting.trg_inverse(phi)).collect::<Result<_>>()?;
    let labels = gens.iter().map(|v| format_class(setting.classes.labels(), v)).collect();
    layer_pairing(&layer, &setting.t0, &setting.trg.invariants, &characters, &right, labels)
}

/// The values `<x, phi>` for `x` in `elements` and the canonical generators
/// `phi` of `Ker(inf: A -> H^2(G))`, computed from coboundary witnesses:
/// if `du = inf(phi)` then the pairing value is `-u(x)`.
pub fn pairing_b_by_witness(setting: &DualitySetting, elements: &[usize]) -> Result<Vec<Vec<u32>>> {
    let solver = setting.classes.inflation_solver(&setting.group, setting.projection())?;
    let gens = setting.a_kernel().generators().to_vec();
    let md = setting.modulus;
    let mut cols = Vec::with_capacity(gens.len());
    for phi in &gens {
        let u = solver
            .witness(phi)
            .ok_or_else(|| Error::Precondition("class does not inflate to zero".into()))?;
        cols.push(elements.iter().map(|&x| md.neg(u.value(x))).collect::<Vec<u32>>());
    }
    Ok((0..elements.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect())
}

/// The same values as [`pairing_b_by_witness`] via `trg^-1`.
pub fn pairing_b_by_transgression(setting: &DualitySetting, elements: &[usize]) -> Result<Vec<Vec<u32>>> {
    let gens = setting.a_kernel().generators().to_vec();
    let chars: Vec<Vec<u32>> = gens.iter().map(|phi| setting.trg_inverse(phi)).collect::<Result<_>>()?;
    Ok(elements
        .iter()
        .map(|&x| chars.iter().map(|psi| setting.eval(psi, x)).collect())
        .collect())
}

pub(crate) fn format_class(labels: &[String], v: &[u32]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(labels)
        .filter(|(&c, _)| c != 0)
        .map(|(&c, l)| if c == 1 { l.clone() } else { format!("{c}*{l}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
