from ._hslab import (
    DiscriminantReport,
    Family,
    FemSolution,
    MuReport,
    NondegeneracyCertificate,
    PohozaevReport,
    ProblemParams,
    RadialProfile,
    RefineRow,
    closed_form_profile,
    curvature_slope,
    discriminant_closed_form,
    discriminant_report,
    family_params,
    harmonic_radius,
    minimize_quotient,
    mu_half_space,
    nondegeneracy_certificate,
    params_from_p,
    params_from_s,
    pohozaev_report,
    profile_residual,
    refine_study,
    shoot,
    solve_profile,
)

__all__ = [
    "DiscriminantReport",
    "Family",
    "FemSolution",
    "MuReport",
    "NondegeneracyCertificate",
    "PohozaevReport",
    "ProblemParams",
    "RadialProfile",
    "RefineRow",
    "closed_form_profile",
    "curvature_slope",
    "discriminant_closed_form",
    "discriminant_report",
    "family_params",
    "harmonic_radius",
    "minimize_quotient",
    "mu_half_space",
    "nondegeneracy_certificate",
    "params_from_p",
    "params_from_s",
    "pohozaev_report",
    "profile_residual",
    "refine_study",
    "shoot",
    "solve_profile",
]
