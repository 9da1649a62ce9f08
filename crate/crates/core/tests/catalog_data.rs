use std::path::Path;
use superhopf::catalog::{catalog, counts, Catalog, Tier};
use superhopf::constructions::{variant, VariantKind};

fn bundled_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data/catalog"))
}

#[test]
fn bundled_files_match_the_built_catalog() {
    let loaded = Catalog::load_dir(bundled_dir()).unwrap();
    let built = catalog();
    assert_eq!(loaded.entries().len(), built.entries().len());
    for (a, b) in loaded.entries().iter().zip(built.entries()) {
        assert_eq!(a, b, "{}", b.id());
    }
    assert_eq!(loaded.aliases(), built.aliases());
    assert_eq!(loaded.cross_refs(), built.cross_refs());
    assert!(loaded.validate().is_empty());
}

#[test]
fn export_then_load_is_lossless() {
    let dir = std::env::temp_dir().join(format!("superhopf-export-{}", std::process::id()));
    catalog().export(&dir).unwrap();
    let back = Catalog::load_dir(&dir).unwrap();
    assert_eq!(back.entries(), catalog().entries());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn table_rows() {
    let rows = counts();
    let row = |f: &str, dim: usize| rows.iter().find(|r| r.family == f && r.dim == dim).unwrap().clone();
    assert_eq!((row("A_{2|1}", 4).superbialgebras, row("A_{2|1}", 4).hopf), (22, 0));
    assert_eq!((row("A_{13|1}", 4).superbialgebras, row("A_{13|1}", 4).hopf), (21, 0));
    assert_eq!(row("A_{3|2}", 4).hopf, 2);
    assert_eq!(row("A_{1|1}", 4).hopf, 1);
    let dim4: usize = rows.iter().filter(|r| r.dim == 4).map(|r| r.superbialgebras).sum();
    let dim3: usize = rows.iter().filter(|r| r.dim == 3).map(|r| r.superbialgebras).sum();
    assert_eq!((dim4, dim3), (155, 11));
    assert_eq!(catalog().bialgebras().count(), 167);
    assert_eq!(catalog().by_tier(Tier::Hopf).count(), 6);
}

#[test]
fn lookups() {
    let c = catalog();
    let a = c.get("A_{2|2}^2").unwrap();
    assert_eq!(a.dim(), 3);
    let y = superhopf::BasisIndex::odd(1);
    assert!(!a.data.comult.as_ref().unwrap().get(superhopf::BasisIndex::even(2)).get(&[y, y]).is_zero());
    assert_eq!(c.get("H3").unwrap().id(), "A_{12|2}^1");
    let op = variant(&c.get("A_{14|1}^5").unwrap().data, VariantKind::Op).unwrap();
    let target = &c.get("A_{15|1}^3").unwrap().data;
    assert_eq!((op.mult, op.comult, op.counit), (target.mult.clone(), target.comult.clone(), target.counit.clone()));
    assert!(c.get("A_{99|1}^1").is_err());
}

#[test]
fn provenance_names_the_structure() {
    for e in catalog().entries() {
        assert!(!e.provenance.is_empty(), "{}", e.id());
    }
}
