//! Optimal discriminators, generator values at the optimum, and the
//! identities tying those values to (Jensen-)f-divergences.

mod discriminator;
mod identities;
mod report;
mod suite;
mod value;

pub use discriminator::{alpha_discriminator, canonical_discriminator, lk_discriminator, DiscriminatorField};
pub use identities::{
    formula_identity, lemma2_identity, lemma3_divergence_identity, lemma4_corrected_identity, lemma4_identity,
    prop1_alpha_one_check, prop1_arimoto_identity, prop3_vajda_identity, renyi_hellinger_identity,
    symmetrization_identity, theorem1_identity, theorem1_with, AlphaOneVerdict, LkLabels,
};
pub use report::{IdentityReport, Tolerance, NEAR_ZERO};
pub use suite::{
    run_suite, theorem1_members, IdentityRecord, Suite, SuiteConfig, LEMMA3_ALPHAS, LEMMA3_REJECTED_ALPHA,
    LEMMA4_KS, PROP1_ALPHAS, PROP3_KS, RENYI_ALPHAS, SUPPORTS,
};
