"""Command-line front end.

One subcommand per workflow: bilinear classification, the quadratic
identity and reconstruction checks, Elko construction, the constant
background-vector Dirac sector, field redefinitions, torsion couplings,
and the anisotropic cosmology verification.  Every run writes a single
deterministic JSON or CSV report to stdout or --out.

Exit status: 0 all checks passed, 1 a verification residual exceeded
tolerance, 2 malformed or inconsistent input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import report
from .bilinears import Spinor, bilinears, dirac_adjoint
from .classify import LounestoClass, OutsideClassification, Tolerance, classify, classify_spinor
from .conventions import charge_conjugate, check_rep, gamma5_of, slash
from .cosmology import (
    CosmologySolution,
    b_int_for,
    conservation_check,
    dirac_residual,
    einstein_residuals,
    volume_ode_residual,
)
from .elko import (
    MomentumParams,
    boosted_closed_form,
    dirac_action_relations,
    elko_boosted,
    elko_rest,
)
from .field_redef import (
    ADMISSIBLE_SOURCES,
    PlaneWaveState,
    RedefinitionParams,
    class_map_experiment,
    flagdipole_constraint_residual,
    majorana_delta,
    map_dirac_to_majorana,
    map_regular_to_flagdipole,
    redefine,
    transformed_bilinears,
)
from .fierz import (
    FierzAggregate,
    aggregate_from_spinor,
    fierz_residuals,
    is_boomerang,
    phase_align,
    takahashi_auto,
)
from .lv_dirac import (
    NearPoleError,
    branch_energy_u,
    branch_energy_v,
    dispersion_quartic,
    hamiltonian_lv,
    lv_operator,
    propagator_denominator,
    propagator_lv,
    spinor_u,
    spinor_v,
)
from .torsion import (
    DIM45_COUPLING_NAMES,
    TorsionTensor,
    WeakField,
    flagpole_reduction,
    lagrangian_LI_terms,
    lagrangian_LV_terms,
    lagrangian_dim45_terms,
)


class InputError(Exception):
    """Raised for anything wrong with the command input (exit code 2)."""


# ---------------------------------------------------------------- parsing

def _load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise InputError(f"cannot read {path}: {err}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(
            f"malformed JSON in {path}: {err.msg} at line {err.lineno} column {err.colno}"
        )


def _complex_of(raw, name):
    """Accept a plain number or an [re, im] pair."""
    if isinstance(raw, (int, float)):
        return complex(raw)
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        try:
            return complex(float(raw[0]), float(raw[1]))
        except (TypeError, ValueError):
            pass
    raise InputError(f"{name} must be a number or an [re, im] pair, got {raw!r}")


def _complex_vector(raw, n, name):
    if not isinstance(raw, (list, tuple)) or len(raw) != n:
        raise InputError(f"{name} must be a list of {n} entries")
    return np.array([_complex_of(v, f"{name}[{i}]") for i, v in enumerate(raw)])


def _real_array(raw, shape, name):
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"{name} must be a real array of shape {shape}")
    if arr.shape != shape:
        raise InputError(f"{name} must have shape {shape}, got {arr.shape}")
    return arr


def _spinor_of(obj, name="spinor"):
    if not isinstance(obj, dict):
        raise InputError(f"{name} must be an object with 'rep' and 'components'")
    rep = obj.get("rep", "dirac")
    try:
        check_rep(rep)
    except ValueError as err:
        raise InputError(f"{name}: {err}")
    if "components" not in obj:
        raise InputError(f"{name} is missing 'components'")
    comps = _complex_vector(obj["components"], 4, f"{name}.components")
    return Spinor(comps, rep)


def _floats_csv(text, n, name):
    parts = [p for p in text.split(",") if p.strip() != ""]
    if len(parts) != n:
        raise InputError(f"{name} needs {n} comma-separated numbers, got {text!r}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError:
        raise InputError(f"{name} has a non-numeric entry: {text!r}")


def _class_value(result):
    """Classification result -> (int code, label); 0 marks 'outside'."""
    if isinstance(result, OutsideClassification):
        return 0, f"outside ({result.reason})"
    return int(result), LounestoClass(int(result)).name.lower()


def _check_row(quantity, value, threshold, **extra):
    row = {"quantity": quantity, "value": float(value),
           "threshold": float(threshold),
           "status": "pass" if abs(value) <= threshold else "fail"}
    row.update(extra)
    return row


def _info_row(quantity, value, **extra):
    row = {"quantity": quantity, "value": value, "threshold": None, "status": ""}
    row.update(extra)
    return row


CHECK_COLUMNS = ("quantity", "value", "threshold", "status")


def _all_pass(rows):
    return all(r.get("status") != "fail" for r in rows)


# ------------------------------------------------------------ subcommands

def _cmd_classify(args):
    data = _load_json(args.input)
    entries = data if isinstance(data, list) else [data]
    tol = Tolerance(args.tol_abs, args.tol_rel)
    meta = report.build_meta(args.tol_abs, args.tol_rel, args.seed)
    columns = ("index", "class", "label", "regular", "sigma", "omega",
               "j0", "j1", "j2", "j3", "k0", "k1", "k2", "k3",
               "s01", "s02", "s03", "s12", "s13", "s23")
    rows, results = [], []
    for idx, entry in enumerate(entries):
        psi = _spinor_of(entry, f"spinor[{idx}]")
        b = bilinears(psi)
        cls = classify(b, tol)
        code, label = _class_value(cls)
        regular = None if code == 0 else code in (1, 2, 3)
        pairs = [(mu, nu) for mu in range(4) for nu in range(mu + 1, 4)]
        row = {"index": idx, "class": code, "label": label, "regular": regular,
               "sigma": b.sigma, "omega": b.omega}
        for mu in range(4):
            row[f"j{mu}"] = float(b.j[mu])
            row[f"k{mu}"] = float(b.k[mu])
        for mu, nu in pairs:
            row[f"s{mu}{nu}"] = float(b.s[mu, nu])
        rows.append(row)
        results.append({"class": code, "label": label, "regular": regular,
                        "bilinears": b.as_dict()})
    extra = {"results": results}
    return report.render(args.format, meta, columns, rows, extra), True, []


def _cmd_fierz(args):
    data = _load_json(args.input)
    entries = data if isinstance(data, list) else [data]
    meta = report.build_meta(args.tol_abs, args.tol_rel, args.seed)
    columns = ("index",) + CHECK_COLUMNS
    rows = []
    for idx, entry in enumerate(entries):
        psi = _spinor_of(entry, f"spinor[{idx}]")
        res = fierz_residuals(bilinears(psi))
        scale = res.pop("scale")
        threshold = args.tol_abs + args.tol_rel * scale
        for name in sorted(res):
            rows.append(_check_row(name, res[name], threshold, index=idx))
    return report.render(args.format, meta, columns, rows), _all_pass(rows), []


def _cmd_takahashi(args):
    data = _load_json(args.input)
    meta = report.build_meta(args.tol_abs, args.tol_rel, args.seed)
    rows, extra = [], {}
    if isinstance(data, dict) and "matrix" in data:
        rep = data.get("rep", "dirac")
        try:
            check_rep(rep)
        except ValueError as err:
            raise InputError(str(err))
        raw = data["matrix"]
        if not isinstance(raw, list) or len(raw) != 4:
            raise InputError("matrix must be a 4x4 nested list")
        mat = np.array([
            [_complex_of(v, f"matrix[{i}][{j}]") for j, v in enumerate(r)]
            for i, r in enumerate(raw)
        ])
        if mat.shape != (4, 4):
            raise InputError("matrix must be a 4x4 nested list")
        flag, diag = is_boomerang(mat, tol=max(args.tol_rel, args.tol_abs), rep=rep)
        for key in ("self_adjoint_error", "closure_error"):
            if key in diag:
                rows.append(_check_row(key, diag[key], args.tol_abs + args.tol_rel))
        rows.append(_info_row("is_aggregate", bool(flag)))
        if not flag:
            rows.append(_info_row("reason", diag.get("reason", "")))
        if flag:
            psi, probe = takahashi_auto(FierzAggregate(mat, rep))
            extra["spinor"] = report.spinor_obj(psi.components, rep)
            rows.append(_info_row("probe", probe))
        ok = bool(flag)
    else:
        psi = _spinor_of(data)
        z = aggregate_from_spinor(psi)
        rec, probe = takahashi_auto(z)
        rec = phase_align(rec, psi)
        err = float(np.max(np.abs(rec.components - psi.components)))
        threshold = args.tol_abs + args.tol_rel * psi.norm()
        rows.append(_check_row("round_trip_error", err, threshold))
        rows.append(_info_row("probe", probe))
        extra["spinor"] = report.spinor_obj(rec.components, rec.rep)
        ok = _all_pass(rows)
    return report.render(args.format, meta, CHECK_COLUMNS, rows, extra), ok, []


def _cmd_elko(args):
    helicity = +1 if args.helicity == "plus" else -1
    if args.kind not in ("self", "anti"):
        raise InputError("kind must be 'self' or 'anti'")
    p = _floats_csv(args.p, 3, "--p")
    if args.m <= 0:
        raise InputError("mass must be positive")
    meta = report.build_meta(args.tol_abs, args.tol_rel, args.seed,
                             kind=args.kind, helicity=args.helicity, m=args.m)
    rows = []
    if float(np.linalg.norm(p)) == 0.0:
        lam = elko_rest(args.kind, helicity, args.theta, args.phi, args.m)
    else:
        mp = MomentumParams(args.m, p)
        lam = elko_boosted(args.kind, helicity, mp)
        closed = boosted_closed_form(args.kind, helicity, mp)
        gap = float(np.max(np.abs(lam.components - closed.components)))
        rows.append(_check_row("boost_vs_closed_form", gap,
                               args.tol_abs + args.tol_rel * float(np.linalg.norm(lam.components))))
        relations = dirac_action_relations(mp)
        defect = relations.pop("min_dirac_defect")
        scale = args.m * float(np.linalg.norm(lam.components))
        for name in sorted(relations):
            rows.append(_check_row(f"pairing_{name}", relations[name],
                                   args.tol_abs + args.tol_rel * scale))
        floor_row = {"quantity": "dirac_defect_over_mass", "value": defect / args.m,
                     "threshold": 1.0,
                     "status": "pass" if defect >= args.m * (1.0 - 1e-9) else "fail"}
        rows.append(floor_row)
    sign = +1.0 if args.kind == "self" else -1.0
    conj = charge_conjugate(lam.components, lam.spinor.rep)
    c_res = float(np.max(np.abs(conj - sign * lam.components)))
    rows.insert(0, _check_row("conjugation_eigen_residual", c_res,
                              args.tol_abs + args.tol_rel * float(np.linalg.norm(lam.components))))
    extra = {"spinor": report.spinor_obj(lam.components, lam.spinor.rep)}
    return report.render(args.format, meta, CHECK_COLUMNS, rows, extra), _all_pass(rows), []


def _lv_background(args):
    bvec = _floats_csv(args.bvec, 3, "--bvec")
    return np.array([args.b0, *bvec])


def _cmd_lv_dispersion(args):
    p = _floats_csv(args.p, 3, "--p")
    b = _lv_background(args)
    if args.m < 0:
        raise InputError("mass must be nonnegative")
    branches = dispersion_quartic(b, args.m, p)
    ham = np.sort(np.linalg.eigvalsh(hamiltonian_lv(b, args.m, p)))[::-1]
    poly = np.polynomial.Polynomial(branches.coeffs[::-1])
    scale = max(float(p @ p) + float(b @ b) + args.m**2, 1.0)
    meta = report.build_meta(args.tol_abs, args.tol_rel, args.seed,
                             b0=args.b0, m=args.m,
                             degenerate=branches.degenerate)
    columns = ("branch", "root", "imag_part", "quartic_residual",
               "hamiltonian_gap", "status")
    rows = []
    for i, root in enumerate(branches.roots):
        quartic_res = abs(complex(poly(root)))
        ham_gap = abs(root.real - ham[i])
        threshold = args.tol_abs + args.tol_rel * scale**2
        ok = (quartic_res <= threshold
              and abs(root.imag) <= threshold
              and ham_gap <= args.tol_abs + args.tol_rel * scale)
        rows.append({"branch": i + 1, "root": float(root.real),
                     "imag_part": float(root.imag),
                     "quartic_residual": quartic_res,
                     "hamiltonian_gap": ham_gap,
                     "status": "pass" if ok else "fail"})
    extra = {"particle": branches.particle.tolist(),
             "antiparticle": branches.antiparticle.tolist(),
             "coefficients": branches.coeffs.tolist()}
    figures = []
    if args.plot:
        pmag = float(np.linalg.norm(p))
        direction = p / pmag if pmag > 0 else np.array([0.0, 0.0, 1.0])
        span = np.linspace(0.0, max(2.0 * pmag, 2.0), 81)
        sweep = np.array([np.sort(dispersion_quartic(b, args.m, s * direction).roots.real)
                          for s in span])
        curves = {f"branch {i + 1}": sweep[:, i] for i in range(4)}
        path = Path(args.figdir) / "lv_dispersion.png"
        figures.append(report.save_curves(
            path, span, curves, title="dispersion branches",
            xlabel="|p| along the given direction", ylabel="p0"))
    text = report.render(args.format, meta, columns, rows, extra)
    return text, all(r["status"] == "pass" for r in rows), figures


def _cmd_lv_spinors(args):
    p = _floats_csv(args.p, 3, "--p")
    if args.m <= 0:
        raise InputError("mass must be positive")
    build = spinor_u if args.kind == "u" else spinor_v
    psi = build(args.alpha, p, args.b0, args.m)
    pmag = float(np.linalg.norm(p))
    b = np.array([args.b0, 0.0, 0.0, 0.0])
    g5 = gamma5_of(psi.rep)
    if args.kind == "u":
        energy = branch_energy_u(args.alpha, pmag, args.b0, args.m)
        four_p = np.array([energy, *p])
        residual = lv_operator(four_p, b, args.m, psi.rep) @ psi.components
        norm_target = 1.0
    else:
        energy = branch_energy_v(args.alpha, pmag, args.b0, args.m)
        four_p = np.array([energy, *(-p)])
        op = slash(four_p, psi.rep) + slash(b, psi.rep) @ g5 + args.m * np.eye(4)
        residual = op @ psi.components
        norm_target = -1.0
    scale = float(np.linalg.norm(psi.components)) * max(args.m + pmag, 1.0)
    norm_val = float(np.real(dirac_adjoint(psi) @ psi.components))
    rows = [
        _check_row("equation_residual", float(np.linalg.norm(residual)),
                   args.tol_abs + args.tol_rel * scale),
        _check_row("adjoint_norm_gap", norm_val - norm_target,
                   args.tol_abs + args.tol_rel),
    ]
    meta = report.build_meta(args.tol_abs, args.tol_rel, args.seed,
                             kind=args.kind, alpha=args.alpha,
                             b0=args.b0, m=args.m, energy=energy)
    extra = {"spinor": report.spinor_obj(psi.components, psi.rep)}
    return report.render(args.format, meta, CHECK_COLUMNS, rows, extra), _all_pass(rows), []


def _cmd_lv_propagator(args):
    p4 = _floats_csv(args.p4, 4, "--p4")
    b = _lv_background(args)
    if args.m < 0:
        raise InputError("mass must be nonnegative")
    try:
        s = propagator_lv(p4, b, args.m)
    except NearPoleError as err:
        raise InputError(f"momentum sits on a dispersion branch: {err}")
    lhs = lv_operator(p4, b, args.m) @ s
    identity_res = float(np.max(np.abs(lhs - 1j * np.eye(4))))
    scale = float(np.max(np.abs(s))) * max(float(np.max(np.abs(p4))), 1.0)
    rows = [_check_row("defining_identity", identity_res,
                       args.tol_abs + args.tol_rel * max(scale, 1.0))]
    meta = report.build_meta(args.tol_abs, args.tol_rel, args.seed,
                             b0=args.b0, m=args.m,
                             denominator=propagator_denominator(p4, b, args.m))
    extra = {"matrix": report.matrix_obj(s)}
    return report.render(args.format, meta, CHECK_COLUMNS, rows, extra), _all_pass(rows), []


def _redefinition_params(obj):
    if not isinstance(obj, dict):
        raise InputError("params must be an object")
    allowed = {"basis_coeffs", "phase_const", "phase_gradient", "mix_matrix",
               "deriv_coeffs", "axial_deriv_coeffs"}
    unknown = set(obj) - allowed
    if unknown:
        raise InputError(f"unknown redefinition parameters: {sorted(unknown)}")
    kwargs = {}
    if "basis_coeffs" in obj:
        kwargs["basis_coeffs"] = _complex_vector(obj["basis_coeffs"], 16, "basis_coeffs")
    if "phase_const" in obj:
        kwargs["phase_const"] = _complex_of(obj["phase_const"], "phase_const")
    for key, shape in (("phase_gradient", (4,)), ("mix_matrix", (4, 4)),
                       ("deriv_coeffs", (4,)), ("axial_deriv_coeffs", (4,))):
        if key in obj:
            kwargs[key] = _real_array(obj[key], shape, key)
    try:
        return RedefinitionParams(**kwargs)
    except ValueError as err:
        raise InputError(str(err))


def _cmd_redefine(args):
    data = _load_json(args.input)
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    meta = report.build_meta(args.tol_abs, args.tol_rel, args.seed, kind=args.kind)
    tol = Tolerance(args.tol_abs, args.tol_rel)
    rows, extra = [], {}

    if args.kind == "general":
        chi = _spinor_of(data.get("spinor"), "spinor")
        p = _real_array(data.get("p", [0.0] * 4), (4,), "p")
        x = _real_array(data.get("x", [0.0] * 4), (4,), "x")
        params = _redefinition_params(data.get("params", {}))
        state = PlaneWaveState(chi, p, x)
        b_chi, b_psi, delta, excess = transformed_bilinears(state, params)
        psi = redefine(state, params)
        chi_code, chi_label = _class_value(classify(b_chi, tol))
        psi_code, psi_label = _class_value(classify(b_psi, tol))
        rows.append(_info_row("class_chi", chi_code, label=chi_label))
        rows.append(_info_row("class_psi", psi_code, label=psi_label))
        rows.append(_info_row("delta", delta))
        for name in ("sigma", "omega"):
            rows.append(_info_row(f"excess_{name}", float(excess[name])))
        for name in ("j", "k", "s"):
            rows.append(_info_row(f"excess_{name}_max", float(np.max(np.abs(excess[name])))))
        excess_scale = max(b_chi.scale(), b_psi.scale(), 1e-300)
        nontrivial = delta != 0.0 and any(
            float(np.max(np.abs(np.atleast_1d(v)))) > tol.abs_tol + tol.rel_tol * excess_scale
            for v in excess.values())
        admissible = True
        if nontrivial and psi_code != 0 and chi_code != 0:
            admissible = chi_code in ADMISSIBLE_SOURCES.get(psi_code, set())
        rows.append({"quantity": "admissible_pair", "value": admissible,
                     "threshold": None, "status": "pass" if admissible else "fail"})
        extra["spinor"] = report.spinor_obj(psi.components, psi.rep)
        ok = admissible

    elif args.kind == "majorana":
        if "spinor" in data:
            chi = _spinor_of(data["spinor"], "spinor")
            if chi.rep != "weyl":
                raise InputError("majorana map needs a chiral-representation spinor")
            a1, a3 = chi.components[1], chi.components[3]
        else:
            if "a1" not in data or "a3" not in data:
                raise InputError("majorana input needs 'a1' and 'a3' (or a chiral spinor)")
            a1 = _complex_of(data["a1"], "a1")
            a3 = _complex_of(data["a3"], "a3")
            chi = Spinor([0.0, a1, 0.0, a3], "weyl")
        if "delta" in data:
            delta = _complex_of(data["delta"], "delta")
        else:
            try:
                delta = majorana_delta(a1, a3)
            except ValueError as err:
                raise InputError(str(err))
        try:
            mapped = map_dirac_to_majorana(chi, delta)
        except ValueError as err:
            raise InputError(str(err))
        conj_gap = float(np.max(np.abs(
            charge_conjugate(mapped.components, mapped.rep) - mapped.components)))
        norm = float(np.linalg.norm(mapped.components))
        rows.append(_check_row("self_conjugacy_residual", conj_gap,
                               args.tol_abs + args.tol_rel * max(norm, 1.0)))
        code, label = _class_value(classify_spinor(mapped, tol))
        rows.append(_info_row("class", code, label=label))
        rows.append(_info_row("delta", delta))
        extra["spinor"] = report.spinor_obj(mapped.components, mapped.rep)
        ok = _all_pass(rows)

    else:  # flagdipole
        chi = _spinor_of(data.get("spinor"), "spinor")
        beta1 = _complex_of(data.get("beta1", 1.0), "beta1")
        beta2 = _complex_of(data.get("beta2", 1.0), "beta2")
        constraint = flagdipole_constraint_residual(chi)
        try:
            mapped = map_regular_to_flagdipole(chi, beta1, beta2)
        except ValueError as err:
            raise InputError(str(err))
        code, label = _class_value(classify_spinor(mapped, tol))
        rows.append(_info_row("constraint_residual", constraint))
        rows.append({"quantity": "class", "value": code, "threshold": 4,
                     "status": "pass" if code == 4 else "fail", "label": label})
        extra["spinor"] = report.spinor_obj(mapped.components, mapped.rep)
        ok = _all_pass(rows)

    columns = CHECK_COLUMNS + ("label",)
    return report.render(args.format, meta, columns, rows, extra), ok, []


def _cmd_class_map(args):
    if args.samples <= 0:
        raise InputError("--samples must be positive")
    tol = Tolerance(args.tol_abs, args.tol_rel)
    result = class_map_experiment(args.samples, args.scale, args.seed, tol)
    meta = report.build_meta(args.tol_abs, args.tol_rel, args.seed,
                             samples=result.samples, scale=args.scale,
                             counterexamples=result.counterexamples,
                             violations=len(result.violations))
    col_labels = ["psi_outside"] + [f"psi_class_{c}" for c in range(1, 7)]
    columns = ("source",) + tuple(col_labels)
    rows = []
    for i, label in enumerate(result.row_labels()):
        row = {"source": label}
        for j, col in enumerate(col_labels):
            row[col] = int(result.table[i, j])
        rows.append(row)
    extra = {"counterexamples": result.counterexamples,
             "violations": result.violations}
    figures = []
    if args.plot:
        path = Path(args.figdir) / "class_map.png"
        figures.append(report.save_table_heatmap(
            path, result.table, result.row_labels(), col_labels,
            title="redefinition class map"))
    ok = result.counterexamples == 0 and not result.violations
    return report.render(args.format, meta, columns, rows, extra), ok, figures


LI_COUPLING_NAMES = ("a", "a5", "b", "b5")

TERM_SPECIES = {
    "trace_current": "j", "axial_current": "j",
    "trace_axialvector": "k", "axial_axialvector": "k",
    "scalar": "sigma", "pseudo": "omega", "vector": "j",
    "axialvector": "k", "tensor": "s",
    "trace_scalar": "sigma", "axial_scalar": "sigma",
    "trace_pseudo": "omega", "axial_pseudo": "omega",
    "mixed_tensor": "s", "trace_tensor": "s", "axial_tensor": "s",
    "trace_dual_tensor": "s", "axial_dual_tensor": "s",
}


def _cmd_torsion_couplings(args):
    data = _load_json(args.input)
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    allowed = {"T", "h", "chi", "dchi", "couplings", "spinor", "p", "x"}
    unknown = set(data) - allowed
    if unknown:
        raise InputError(f"unknown bundle keys: {sorted(unknown)}")
    if "T" not in data or "spinor" not in data:
        raise InputError("bundle needs at least 'T' and 'spinor'")
    try:
        torsion = TorsionTensor(_real_array(data["T"], (4, 4, 4), "T"))
        weak = WeakField(
            h=_real_array(data["h"], (4, 4), "h") if "h" in data else None,
            chi=_real_array(data["chi"], (4, 4), "chi") if "chi" in data else None,
            dchi=_real_array(data["dchi"], (4, 4, 4), "dchi") if "dchi" in data else None,
        )
    except ValueError as err:
        raise InputError(str(err))
    couplings = data.get("couplings", {})
    if not isinstance(couplings, dict):
        raise InputError("couplings must be an object")
    unknown = set(couplings) - set(DIM45_COUPLING_NAMES) - set(LI_COUPLING_NAMES)
    if unknown:
        raise InputError(f"unknown couplings: {sorted(unknown)}")
    li = {k: float(couplings.get(k, 0.0)) for k in LI_COUPLING_NAMES}
    dim45 = {k: float(v) for k, v in couplings.items() if k in DIM45_COUPLING_NAMES}
    psi = _spinor_of(data["spinor"], "spinor")
    p = _real_array(data.get("p", [1.0, 0.0, 0.0, 0.0]), (4,), "p")
    x = _real_array(data.get("x", [0.0] * 4), (4,), "x")
    state = PlaneWaveState(psi, p, x)

    bil = bilinears(psi)
    tol = Tolerance(args.tol_abs, args.tol_rel)
    scale = bil.scale()
    species_zero = {
        "sigma": tol.is_zero(bil.sigma, scale),
        "omega": tol.is_zero(bil.omega, scale),
        "j": tol.is_zero(float(np.max(np.abs(bil.j))), scale),
        "k": tol.is_zero(float(np.max(np.abs(bil.k))), scale),
        "s": tol.is_zero(float(np.max(np.abs(bil.s))), scale),
    }
    code, label = _class_value(classify(bil, tol))
    meta = report.build_meta(args.tol_abs, args.tol_rel, args.seed,
                             spinor_class=code, spinor_label=label)

    columns = ("family", "term", "value", "vanished_by_class")
    rows = []
    families = [
        ("rotation_invariant", lagrangian_LI_terms(torsion, bil, **li)),
        ("constant_tensor", lagrangian_LV_terms(torsion, bil, weak)),
        ("dim45", lagrangian_dim45_terms(torsion, state, dim45)),
    ]
    for family, terms in families:
        for term, value in terms.items():
            rows.append({"family": family, "term": term, "value": float(value),
                         "vanished_by_class": species_zero[TERM_SPECIES[term]]})

    ok = True
    extra = {}
    if code == 5:
        terms45 = families[2][1]
        dim4_sum = sum(terms45[t] for t in ("trace_current", "trace_axialvector",
                                            "axial_current", "axial_axialvector"))
        reduced = flagpole_reduction(torsion, bil, dim45)
        tmax = float(np.max(np.abs(torsion.components)))
        gap = abs(dim4_sum - reduced)
        threshold = args.tol_abs + args.tol_rel * max(tmax * scale, 1.0)
        rows.append({"family": "check", "term": "flagpole_reduction_gap",
                     "value": gap, "vanished_by_class": gap <= threshold})
        extra["flagpole_reduction"] = reduced
        ok = gap <= threshold
    return report.render(args.format, meta, columns, rows, extra), ok, []


COSMO_PARAM_KEYS = {"m", "C", "K", "beta", "b_int", "delta_alpha",
                    "varsigma", "xi", "D", "X"}


def _cosmology_solution(path):
    data = _load_json(path)
    if not isinstance(data, dict):
        raise InputError("parameter file must be a JSON object")
    unknown = set(data) - COSMO_PARAM_KEYS
    if unknown:
        raise InputError(f"unknown parameters: {sorted(unknown)}")
    missing = {"m", "C", "K", "beta"} - set(data)
    if missing:
        raise InputError(f"missing parameters: {sorted(missing)}")
    m = float(data["m"])
    beta = float(data["beta"])
    kwargs = dict(
        m=m, C=float(data["C"]), K=float(data["K"]), beta=beta,
        b_int=float(data.get("b_int", b_int_for(m, beta))),
        delta_alpha=float(data.get("delta_alpha", 0.0)),
        varsigma=float(data.get("varsigma", 0.0)),
        xi=float(data.get("xi", 0.0)),
        D=float(data.get("D", 1.0)),
    )
    if "X" in data and data["X"] is not None:
        kwargs["X"] = float(data["X"])
    try:
        return CosmologySolution(**kwargs)
    except ValueError as err:
        raise InputError(str(err))


def _cmd_cosmo_verify(args):
    sol = _cosmology_solution(args.params)
    start = sol.window_start()
    t0 = args.t0 if args.t0 is not None else start + 0.5
    t1 = args.t1 if args.t1 is not None else t0 + 4.0
    if args.samples < 2:
        raise InputError("--samples must be at least 2")
    if not t1 > t0:
        raise InputError("--t1 must exceed --t0")
    if t0 <= start:
        raise InputError(f"evolution window opens at t={start!r}; raise --t0")
    ts = np.linspace(t0, t1, args.samples)
    tol_scale = 1.0
    threshold = args.tol_abs + args.tol_rel * tol_scale
    tolobj = Tolerance(args.tol_abs, args.tol_rel)

    def k_axial(t):
        return np.array([0.0, 0.0, 0.0, -sol.C / sol.tau(t)])

    def zero(t):
        return 0.0

    factors = sol.factors()
    columns = ("t",) + CHECK_COLUMNS
    rows = []
    curves = {name: [] for name in
              ("dirac", "einstein_time", "einstein_space_12",
               "einstein_space_23", "einstein_space_31", "volume_ode")}
    for t in ts:
        res = dirac_residual(sol.psi, sol.tau, sol.phi, sol.m, t,
                             dpsi_fn=sol.dpsi, dtau_fn=sol.dtau)
        dmax = float(np.max(np.abs(res)))
        rows.append(_check_row("dirac", dmax, threshold, t=float(t)))
        curves["dirac"].append(dmax)
        eq = einstein_residuals(factors, sol.phi, sol.potential, k_axial,
                                zero, zero, t, psi_fn=sol.psi, dpsi_fn=sol.dpsi)
        for key in ("time", "space_12", "space_23", "space_31"):
            val = float(eq[key])
            rows.append(_check_row(f"einstein_{key}", val, threshold, t=float(t)))
            curves[f"einstein_{key}"].append(val)
        vol = float(volume_ode_residual(sol, t))
        rows.append(_check_row("volume_ode", vol, threshold, t=float(t)))
        curves["volume_ode"].append(vol)
        dcode, dlabel = _class_value(classify_spinor(sol.psi(t, "dirac"), tolobj))
        wcode, wlabel = _class_value(classify_spinor(sol.psi(t, "weyl"), tolobj))
        rows.append(_info_row("class_dirac_read", dcode, t=float(t)))
        rows.append(_info_row("class_weyl_read", wcode, t=float(t)))

    cons = conservation_check(sol.psi, sol.tau, sol.phi, sol.m, ts,
                              current_constant=sol.K, axial_constant=sol.C)
    rows.append(_check_row("current_drift", cons.current_drift, threshold))
    rows.append(_check_row("axial_drift", cons.axial_drift, threshold))
    rows.append(_check_row("transverse_axial_max", cons.transverse_max, threshold))
    for name in sorted(cons.system_residuals):
        rows.append(_check_row(f"system_{name}", cons.system_residuals[name], threshold))

    meta = report.build_meta(args.tol_abs, args.tol_rel, args.seed,
                             m=sol.m, C=sol.C, K=sol.K, beta=sol.beta,
                             b_int=sol.b_int, delta_alpha=sol.delta_alpha,
                             t0=float(t0), t1=float(t1), samples=args.samples)
    figures = []
    if args.plot:
        path = Path(args.figdir) / "cosmo_residuals.png"
        figures.append(report.save_curves(
            path, ts, curves, title="field-equation residuals",
            xlabel="t", ylabel="|residual|", logy=True))
    return report.render(args.format, meta, columns, rows), _all_pass(rows), figures


# ------------------------------------------------------------------ wiring

def _add_common(sp, fmt_default):
    sp.add_argument("--tol-abs", type=float, default=1e-12,
                    help="absolute zero threshold (default 1e-12)")
    sp.add_argument("--tol-rel", type=float, default=1e-9,
                    help="relative zero threshold (default 1e-9)")
    sp.add_argument("--seed", type=int, default=0, help="RNG seed where sampling applies")
    sp.add_argument("--format", choices=("json", "csv"), default=fmt_default,
                    help=f"report format (default {fmt_default})")
    sp.add_argument("--out", default=None, help="write the report to this file instead of stdout")


def _add_plot(sp):
    sp.add_argument("--plot", action="store_true",
                    help="also render figures next to the report")
    sp.add_argument("--figdir", default=".", help="directory for rendered figures")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinorlab",
        description="bilinear-covariant classification and its field-theory checks")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="Lounesto class and all covariants of spinors")
    sp.add_argument("input", help="JSON file: one spinor object or a list of them")
    _add_common(sp, "json")
    sp.set_defaults(handler=_cmd_classify)

    sp = sub.add_parser("fierz", help="quadratic identity residuals of the covariants")
    sp.add_argument("input", help="JSON file: one spinor object or a list of them")
    _add_common(sp, "csv")
    sp.set_defaults(handler=_cmd_fierz)

    sp = sub.add_parser("takahashi", help="reconstruct a spinor from its aggregate")
    sp.add_argument("input", help="JSON file: spinor (round trip) or {matrix, rep}")
    _add_common(sp, "json")
    sp.set_defaults(handler=_cmd_takahashi)

    sp = sub.add_parser("elko", help="charge-conjugation eigenspinors with checks")
    sp.add_argument("--kind", choices=("self", "anti"), required=True)
    sp.add_argument("--helicity", choices=("plus", "minus"), required=True)
    sp.add_argument("--m", type=float, default=1.0, help="mass (default 1)")
    sp.add_argument("--p", default="0,0,0", help="spatial momentum px,py,pz")
    sp.add_argument("--theta", type=float, default=0.0,
                    help="rest helicity-axis polar angle (used when p = 0)")
    sp.add_argument("--phi", type=float, default=0.0,
                    help="rest helicity-axis azimuth (used when p = 0)")
    _add_common(sp, "json")
    sp.set_defaults(handler=_cmd_elko)

    sp = sub.add_parser("lv-dispersion",
                        help="quartic dispersion branches for a constant axial background")
    sp.add_argument("--b0", type=float, default=0.0, help="time component of the background")
    sp.add_argument("--bvec", default="0,0,0", help="spatial background bx,by,bz")
    sp.add_argument("--m", type=float, default=1.0)
    sp.add_argument("--p", default="0,0,0", help="spatial momentum px,py,pz")
    _add_common(sp, "csv")
    _add_plot(sp)
    sp.set_defaults(handler=_cmd_lv_dispersion)

    sp = sub.add_parser("lv-spinors",
                        help="branch eigenspinors for a timelike background")
    sp.add_argument("--kind", choices=("u", "v"), default="u")
    sp.add_argument("--alpha", type=int, choices=(1, 2), default=1, help="branch index")
    sp.add_argument("--b0", type=float, default=0.0)
    sp.add_argument("--m", type=float, default=1.0)
    sp.add_argument("--p", default="0,0,0", help="spatial momentum px,py,pz")
    _add_common(sp, "json")
    sp.set_defaults(handler=_cmd_lv_spinors)

    sp = sub.add_parser("lv-propagator",
                        help="momentum-space propagator with its defining identity")
    sp.add_argument("--p4", required=True, help="four-momentum p0,px,py,pz")
    sp.add_argument("--b0", type=float, default=0.0)
    sp.add_argument("--bvec", default="0,0,0")
    sp.add_argument("--m", type=float, default=1.0)
    _add_common(sp, "json")
    sp.set_defaults(handler=_cmd_lv_propagator)

    sp = sub.add_parser("redefine", help="spinor field redefinitions and their class moves")
    sp.add_argument("--kind", choices=("general", "majorana", "flagdipole"),
                    default="general")
    sp.add_argument("input", help="JSON parameter file")
    _add_common(sp, "json")
    sp.set_defaults(handler=_cmd_redefine)

    sp = sub.add_parser("class-map",
                        help="seeded survey of class transitions under redefinitions")
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--scale", type=float, default=0.1,
                    help="parameter distribution scale")
    _add_common(sp, "csv")
    _add_plot(sp)
    sp.set_defaults(handler=_cmd_class_map)

    sp = sub.add_parser("torsion-couplings",
                        help="per-term torsion coupling breakdown for one spinor")
    sp.add_argument("input", help="JSON bundle {T, h, chi, couplings, spinor}")
    _add_common(sp, "csv")
    sp.set_defaults(handler=_cmd_torsion_couplings)

    sp = sub.add_parser("cosmo-verify",
                        help="residual and drift report for the anisotropic solution")
    sp.add_argument("--params", required=True, help="JSON parameter file")
    sp.add_argument("--t0", type=float, default=None, help="window start")
    sp.add_argument("--t1", type=float, default=None, help="window end")
    sp.add_argument("--samples", type=int, default=9, help="grid points")
    _add_common(sp, "csv")
    _add_plot(sp)
    sp.set_defaults(handler=_cmd_cosmo_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, ok, figures = args.handler(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except NearPoleError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    for path in figures:
        print(f"figure: {path}", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
