//! Exact McKay correspondence for the finite subgroups of `SL2(C)`.
//!
//! The pipeline runs bottom-up:
//!
//! * [`exactfield`]: cyclotomic numbers in canonical form,
//! * [`groupcat`]: exact enumeration of cyclic, binary dihedral and binary
//!   polyhedral groups,
//! * [`chartab`]: character tables by the Dixon class-algebra method,
//! * [`mckay`]: McKay quiver, affine Cartan matrix and ADE classification,
//! * [`rootsys`]: finite root systems and the fixed-point dichotomy for `M(v)`,
//! * [`hwchar`]: weight multiplicities of integrable highest-weight modules,
//! * [`strata`]: stratum labels and fiber bookkeeping for fixed-point sets,
//! * [`cli`]: command-line front end, JSON/DOT emitters and the on-disk cache.

pub mod chartab;
pub mod cli;
pub mod error;
pub mod exactfield;
pub mod groupcat;
pub mod hwchar;
pub(crate) mod linalg;
pub mod mckay;
pub mod rootsys;
pub mod strata;

pub use chartab::{character_table, inner_product, CharacterTable};
pub use error::{Error, Result};
pub use exactfield::CycNumber;
pub use groupcat::{build_group, FiniteSubgroup, GroupElement, GroupSpec};
pub use hwchar::{
    drinfeld_polynomials, freudenthal, weight_of_lagrangian, weylkac_oracle, DrinfeldData,
    MultiplicityTable,
};
pub use mckay::{classify_ade, finite_cartan, mckay_quiver, AdeType, CartanData, FiniteCartan};
pub use rootsys::{
    dominance_leq, m_v_status, positive_roots, reconstruct_g_dim, weyl_reflect, AffineWeight,
    DimVector, MvStatus, RootSystem,
};
pub use strata::{
    enumerate_strata, enumerate_strata_rank1, fiber_decomposition, fixed_sym_product,
    transported_framing, FiberLabel, StratumLabel,
};

/// Everything downstream modules need about one catalog group.
#[derive(Debug, Clone)]
pub struct McKayData {
    pub group: FiniteSubgroup,
    pub table: CharacterTable,
    pub cartan: CartanData,
}

impl McKayData {
    pub fn compute(spec: GroupSpec) -> Result<Self> {
        let group = build_group(spec)?;
        let table = character_table(&group)?;
        let cartan = mckay_quiver(&table)?;
        Ok(McKayData { group, table, cartan })
    }
}
