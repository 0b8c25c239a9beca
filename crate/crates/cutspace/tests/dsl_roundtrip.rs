use cutspace::dsl::{
    self, AttachKind, CheckKind, ConventionSetting, DslDocument, Item, PointLit, SetLit, SpaceDef, StrandDef,
};
use proptest::prelude::*;

// Leading `v` keeps generated names clear of every keyword.
fn ident() -> impl Strategy<Value = String> {
    "v[a-zA-Z0-9_']{0,5}"
}

fn idents() -> impl Strategy<Value = Vec<String>> {
    proptest::collection::vec(ident(), 1..4)
}

fn pairs() -> impl Strategy<Value = Vec<(String, String)>> {
    proptest::collection::vec((ident(), ident()), 0..3)
}

fn point() -> impl Strategy<Value = PointLit> {
    prop_oneof![ident().prop_map(PointLit::Name), (0usize..50).prop_map(PointLit::Index)]
}

fn set_lit() -> impl Strategy<Value = SetLit> {
    (proptest::collection::vec(point(), 0..4), proptest::option::of(0usize..50))
        .prop_map(|(points, tail)| SetLit { points, tail })
}

fn attach_kind() -> impl Strategy<Value = AttachKind> {
    prop_oneof![
        Just(AttachKind::AboveAll),
        (0usize..9).prop_map(AttachKind::AbovePrefix),
        (0usize..9).prop_map(AttachKind::BelowIndex),
        Just(AttachKind::Incomparable),
    ]
}

fn space_def() -> impl Strategy<Value = SpaceDef> {
    prop_oneof![
        ident().prop_map(SpaceDef::Alexandroff),
        ident().prop_map(SpaceDef::Upper),
        ident().prop_map(SpaceDef::WeakScott),
        ident().prop_map(SpaceDef::Scott),
        ident().prop_map(SpaceDef::Cofinite),
        ident().prop_map(SpaceDef::Si2),
        (ident(), proptest::collection::vec(set_lit(), 1..4))
            .prop_map(|(carrier, opens)| SpaceDef::Explicit { carrier, opens }),
    ]
}

fn strand() -> impl Strategy<Value = StrandDef> {
    prop_oneof![point().prop_map(StrandDef::Constant), (0usize..9).prop_map(StrandDef::ChainCofinal)]
}

fn check() -> impl Strategy<Value = Item> {
    (proptest::sample::select(CheckKind::ALL.to_vec()), ident()).prop_flat_map(|(kind, target)| {
        proptest::collection::vec(set_lit(), kind.arity()).prop_map(move |args| Item::Check {
            kind,
            target: target.clone(),
            args,
        })
    })
}

fn item() -> impl Strategy<Value = Item> {
    prop_oneof![
        (ident(), idents(), pairs()).prop_map(|(name, elements, order)| Item::Poset { name, elements, order }),
        (ident(), idents(), pairs(), proptest::collection::vec((ident(), attach_kind()), 0..3))
            .prop_map(|(name, finite, order, attach)| Item::OmegaPoset { name, finite, order, attach }),
        ident().prop_map(|name| Item::Antichain { name }),
        (ident(), space_def()).prop_map(|(name, def)| Item::Space { name, def }),
        (ident(), ident(), proptest::collection::vec(strand(), 1..4))
            .prop_map(|(name, over, strands)| Item::Net { name, over, strands }),
        check(),
        proptest::sample::select(vec![ConventionSetting::Standard, ConventionSetting::Empty, ConventionSetting::Both])
            .prop_map(Item::Convention),
    ]
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(items in proptest::collection::vec(item(), 0..8)) {
        let doc = DslDocument { items, positions: Vec::new() };
        let text = dsl::print(&doc);
        let back = dsl::parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(dsl::print(&back), text);
    }
}

#[test]
fn gallery_sources_round_trip() {
    for name in cutspace::gallery::EXAMPLES {
        let doc = dsl::parse(cutspace::gallery::source(name).unwrap()).unwrap();
        assert_eq!(dsl::parse(&dsl::print(&doc)).unwrap(), doc);
    }
}

#[test]
fn comments_and_whitespace_are_ignored() {
    let a = dsl::parse("# lead\nposet P{elements:a,b;order:a<b;}  # trail\n\n").unwrap();
    let b = dsl::parse("poset P { elements: a, b; order: a < b; }").unwrap();
    assert_eq!(a, b);
}
