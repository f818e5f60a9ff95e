mod common;

use saxl_core::actions::{bundled_catalogue, find_entry};
use saxl_core::perm::{find_subgroup, PermGroup, SubgroupSpec};
use saxl_core::Caps;

use common::*;

fn same_group(a: &PermGroup, b: &PermGroup) -> bool {
    a.order() == b.order() && a.is_subgroup_of(b) && b.is_subgroup_of(a)
}

#[test]
fn bundled_entries_match_derivations() {
    let bundled = bundled_catalogue().unwrap();
    for (id, g, h) in table_fixtures() {
        let entry = bundled
            .iter()
            .find(|e| e.id == id)
            .unwrap_or_else(|| panic!("missing {id}"));
        assert!(same_group(&entry.group, &g), "{id}: group differs");
        assert!(
            same_group(entry.subgroup.as_ref().unwrap(), &h),
            "{id}: subgroup differs"
        );
    }
}

#[test]
fn m11_entry_and_known_subgroups() {
    let m = find_entry(bundled_catalogue().unwrap(), "M11").unwrap();
    assert_eq!(m.group.order_u128(), 7920);
    assert!(m.subgroup.is_none());
    let caps = Caps::default();
    let p = find_subgroup(&m.group, &SubgroupSpec::Sylow(2), &caps).unwrap();
    assert_eq!(p.order_u128(), 16);
    let fixtures = table_fixtures();
    let (_, _, n) = fixtures.iter().find(|(id, _, _)| *id == "M11_2S4").unwrap();
    assert_eq!(n.order_u128(), 48);
    assert_eq!(7920 / n.order_u128(), 165);
}

#[test]
fn l2_17_s4_has_index_102() {
    let fixtures = table_fixtures();
    let (_, g, h) = fixtures.iter().find(|(id, _, _)| *id == "L2_17_S4").unwrap();
    assert_eq!(g.order_u128(), 2448);
    assert_eq!(g.order_u128() / h.order_u128(), 102);
    // the order-24 search and the normaliser of a Klein four-group agree here
    let n = klein_normaliser(g, g);
    assert_eq!(n.order_u128(), 24);
}

#[test]
fn catalogue_actions_have_expected_degrees() {
    let caps = Caps::default();
    let want = [
        ("S7_AGL17", 120),
        ("A9_ASL23", 840),
        ("M11_2S4", 165),
        ("L2_17_S4", 102),
        ("L2_13_2_S4", 91),
        ("L2_11_2_S4", 55),
        ("L3_3_GL1_27", 144),
        ("L3_3_O3_3", 234),
    ];
    let bundled = bundled_catalogue().unwrap();
    for (id, n) in want {
        let e = bundled.iter().find(|e| e.id == id).unwrap();
        let a = e.action(&caps).unwrap();
        assert_eq!(a.degree(), n, "{id}");
        assert!(a.group().is_transitive());
        assert!(a.source().is_some(), "{id} should be faithful");
    }
}

#[test]
fn unknown_id_is_reported() {
    let err = find_entry(bundled_catalogue().unwrap(), "nope").unwrap_err();
    assert!(matches!(err, saxl_core::SaxlError::UnknownCatalogueId(_)));
}

/// Regenerates the bundled catalogue text: `cargo test --test catalogue -- --ignored --nocapture`.
#[test]
#[ignore]
fn print_catalogue() {
    println!("name M11\ndegree 11");
    for g in m11().generators() {
        println!("gen {g}");
    }
    println!("expect order 7920\n");
    for (id, g, h) in table_fixtures() {
        println!("name {id}\ndegree {}", g.degree());
        for x in g.generators() {
            println!("gen {x}");
        }
        for x in h.generators() {
            println!("sub gen {x}");
        }
        println!("expect order {} suborder {}\n", g.order(), h.order());
    }
}
