"""Regenerate the model files under fixtures/."""

from __future__ import annotations

from pathlib import Path

from hypdyn.covers import first_involution, rp2_6
from hypdyn.exact_sequence import t2xi_sequence
from hypdyn.lefschetz import solenoid_family
from hypdyn.matrix import Matrix
from hypdyn.modelio import CoverInput, ToralMap, save_model
from hypdyn.spaces import handlebody
from hypdyn.structure import Ambient, BasicSetSpec as B, StructureModel

ROOT = Path(__file__).resolve().parent.parent / "fixtures"


def structure_models() -> dict[str, StructureModel]:
    saddles = [f"s{i}" for i in range(1, 5)]
    plykin = StructureModel(
        (B("plykin", "attractor_1d", 1, orientable=False, trapping="handlebody(3)"),
         *[B(s, "trivial_periodic", 2) for s in saddles],
         B("source1", "trivial_periodic", 3), B("source2", "trivial_periodic", 3)),
        tuple(("plykin", s) for s in saddles) + tuple((s, r) for s in saddles for r in ("source1", "source2")),
        Ambient(True, True, 3, "S3"), "plykin_s3")
    da = StructureModel(
        (B("expanding", "attractor_2d_expanding", 2), B("source", "trivial_periodic", 3)),
        (("expanding", "source"),), Ambient(True, True, 3, "T3"), "da_t3")
    solenoid = StructureModel(
        (B("solenoid", "attractor_1d", 1, trapping="handlebody(1)"),
         B("saddle", "trivial_periodic", 2), B("source", "trivial_periodic", 3)),
        (("solenoid", "saddle"), ("saddle", "source")), Ambient(True, True, 3, "M"), "solenoid_orientable")
    anosov = StructureModel(
        (B("torus", "anosov_torus", 1, trapping="T2xI"),
         B("source1", "trivial_periodic", 3), B("source2", "trivial_periodic", 3)),
        (("torus", "source1"), ("torus", "source2")), Ambient(True, True, 3, "M"), "anosov_torus")
    nonorientable = StructureModel(
        solenoid.basic_sets, solenoid.relations, Ambient(False, True, 3, "N"), "solenoid_nonorientable_ambient")
    cycle = StructureModel(
        (B("sink", "trivial_periodic", 0), B("saddle1", "trivial_periodic", 1),
         B("saddle2", "trivial_periodic", 2), B("source", "trivial_periodic", 3)),
        (("sink", "saddle1"), ("saddle1", "saddle2"), ("saddle2", "saddle1"), ("saddle2", "source")),
        Ambient(True, True, 3, "S3"), "heteroclinic_cycle")
    return {m.name: m for m in (plykin, da, solenoid, anosov, nonorientable, cycle)}


def main() -> None:
    ROOT.mkdir(exist_ok=True)
    (ROOT / "inputs").mkdir(exist_ok=True)
    for name, model in structure_models().items():
        save_model(ROOT / f"{name}.model", "structure_model", model)
    inputs = ROOT / "inputs"
    save_model(inputs / "cat_map.model", "toral_map", ToralMap(Matrix.from_rows([[2, 1], [1, 1]]), "cat_map"))
    save_model(inputs / "handlebody2.model", "chain_pair", handlebody(2))
    save_model(inputs / "t2xi_sequence.model", "exact_sequence", t2xi_sequence())
    save_model(inputs / "solenoid_family.model", "induced_family", solenoid_family())
    base = rp2_6()
    save_model(inputs / "rp2_involution.model", "cover_input",
               CoverInput(base, tuple(sorted(first_involution(base).items()))))


if __name__ == "__main__":
    main()
