// Generated by tools/extract_corpus.py; do not edit.

pub(super) const INDEX: &str = include_str!("../../corpus/index.json");

pub(super) const FILES: &[(&str, &str)] = &[
    ("harborth_52", include_str!("../../corpus/harborth_52.json")),
    ("eps_27_left", include_str!("../../corpus/eps_27_left.json")),
    ("eps_27_right", include_str!("../../corpus/eps_27_right.json")),
    ("eps_42", include_str!("../../corpus/eps_42.json")),
    ("eps_42_limit", include_str!("../../corpus/eps_42_limit.json")),
    ("fig_50v_asym", include_str!("../../corpus/fig_50v_asym.json")),
    ("fig_51v_asym_a", include_str!("../../corpus/fig_51v_asym_a.json")),
    ("fig_51v_asym_b", include_str!("../../corpus/fig_51v_asym_b.json")),
    ("fig_51v_asym_c", include_str!("../../corpus/fig_51v_asym_c.json")),
    ("fig_51v_a", include_str!("../../corpus/fig_51v_a.json")),
    ("fig_51v_b", include_str!("../../corpus/fig_51v_b.json")),
    ("fig_51v_c", include_str!("../../corpus/fig_51v_c.json")),
    ("fig_51v_asym_d", include_str!("../../corpus/fig_51v_asym_d.json")),
    ("fig_53v_a", include_str!("../../corpus/fig_53v_a.json")),
    ("fig_53v_b", include_str!("../../corpus/fig_53v_b.json")),
    ("fig_54v_a", include_str!("../../corpus/fig_54v_a.json")),
    ("fig_54v_b", include_str!("../../corpus/fig_54v_b.json")),
    ("fig_54v_c", include_str!("../../corpus/fig_54v_c.json")),
    ("fig_54v_d", include_str!("../../corpus/fig_54v_d.json")),
    ("fig_54v_e", include_str!("../../corpus/fig_54v_e.json")),
    ("fig_55v", include_str!("../../corpus/fig_55v.json")),
    ("fig_56v_a", include_str!("../../corpus/fig_56v_a.json")),
    ("fig_56v_b", include_str!("../../corpus/fig_56v_b.json")),
    ("fig_56v_c", include_str!("../../corpus/fig_56v_c.json")),
    ("fig_56v_d", include_str!("../../corpus/fig_56v_d.json")),
    ("fig_56v_e", include_str!("../../corpus/fig_56v_e.json")),
    ("fig_56v_f", include_str!("../../corpus/fig_56v_f.json")),
    ("fig_57v_a", include_str!("../../corpus/fig_57v_a.json")),
    ("fig_57v_b", include_str!("../../corpus/fig_57v_b.json")),
    ("fig_58v_a", include_str!("../../corpus/fig_58v_a.json")),
    ("fig_58v_b", include_str!("../../corpus/fig_58v_b.json")),
    ("fig_58v_c", include_str!("../../corpus/fig_58v_c.json")),
    ("fig_59v", include_str!("../../corpus/fig_59v.json")),
    ("fig_59v_asym", include_str!("../../corpus/fig_59v_asym.json")),
    ("fig_60v_rot3", include_str!("../../corpus/fig_60v_rot3.json")),
    ("fig_60v_point", include_str!("../../corpus/fig_60v_point.json")),
    ("fig_61v_mirror", include_str!("../../corpus/fig_61v_mirror.json")),
    ("fig_61v_point", include_str!("../../corpus/fig_61v_point.json")),
    ("fig_62v_point_a", include_str!("../../corpus/fig_62v_point_a.json")),
    ("fig_62v_point_b", include_str!("../../corpus/fig_62v_point_b.json")),
    ("fig_62v_point_c", include_str!("../../corpus/fig_62v_point_c.json")),
    ("fig_62v_mirror_a", include_str!("../../corpus/fig_62v_mirror_a.json")),
    ("fig_62v_mirror_b", include_str!("../../corpus/fig_62v_mirror_b.json")),
];
