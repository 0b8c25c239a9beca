use super::lexer::{lex, Tok};
use super::{
    AttachKind, CheckKind, ConventionSetting, DslDocument, DslError, Item, PointLit, Pos, SetLit, SpaceDef,
    StrandDef,
};

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

type PResult<T> = Result<T, DslError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(DslError::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, want: Tok) -> PResult<()> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", want.describe(), self.peek().describe()))
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == want {
            self.next();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            t => self.error(format!("expected a name, found {}", t.describe())),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            t => self.error(format!("expected `{kw}`, found {}", t.describe())),
        }
    }

    fn number(&mut self) -> PResult<usize> {
        match self.peek().clone() {
            Tok::Number(n) => {
                self.next();
                Ok(n)
            }
            t => self.error(format!("expected a number, found {}", t.describe())),
        }
    }

    fn paren_number(&mut self) -> PResult<usize> {
        self.expect(Tok::LParen)?;
        let n = self.number()?;
        self.expect(Tok::RParen)?;
        Ok(n)
    }

    fn paren_ident(&mut self) -> PResult<String> {
        self.expect(Tok::LParen)?;
        let n = self.ident()?;
        self.expect(Tok::RParen)?;
        Ok(n)
    }

    fn comma_list<T>(&mut self, mut one: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        let mut v = vec![one(self)?];
        while self.eat(&Tok::Comma) {
            v.push(one(self)?);
        }
        Ok(v)
    }

    /// `a < b < c, d < e` as the pairs it states.
    fn order_list(&mut self) -> PResult<Vec<(String, String)>> {
        let mut pairs = Vec::new();
        loop {
            let mut left = self.ident()?;
            self.expect(Tok::Less)?;
            loop {
                let right = self.ident()?;
                pairs.push((left, right.clone()));
                left = right;
                if !self.eat(&Tok::Less) {
                    break;
                }
            }
            if !self.eat(&Tok::Comma) {
                return Ok(pairs);
            }
        }
    }

    fn point(&mut self) -> PResult<PointLit> {
        if self.eat(&Tok::At) {
            Ok(PointLit::Index(self.number()?))
        } else {
            Ok(PointLit::Name(self.ident()?))
        }
    }

    fn set_lit(&mut self) -> PResult<SetLit> {
        self.expect(Tok::LBrace)?;
        let mut s = SetLit::default();
        if self.eat(&Tok::RBrace) {
            return Ok(s);
        }
        loop {
            if s.tail.is_some() {
                return self.error("a tail `@k..` must come last");
            }
            let pos = self.pos();
            match self.point()? {
                PointLit::Index(k) if self.eat(&Tok::DotDot) => s.tail = Some(k),
                PointLit::Name(_) if *self.peek() == Tok::DotDot => {
                    return Err(DslError::Parse { pos, msg: "only chain points `@k` can start a tail".into() });
                }
                p => s.points.push(p),
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(s)
    }

    /// `key: ...;` inside a block.
    fn field<T>(&mut self, key: &str, body: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        self.keyword(key)?;
        self.expect(Tok::Colon)?;
        let v = body(self)?;
        self.expect(Tok::Semi)?;
        Ok(v)
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn poset(&mut self) -> PResult<Item> {
        let name = self.ident()?;
        self.expect(Tok::LBrace)?;
        let elements = self.field("elements", |p| p.comma_list(Self::ident))?;
        let order = if self.is_keyword("order") { self.field("order", Self::order_list)? } else { Vec::new() };
        self.expect(Tok::RBrace)?;
        Ok(Item::Poset { name, elements, order })
    }

    fn attach_kind(&mut self) -> PResult<AttachKind> {
        let pos = self.pos();
        match self.ident()?.as_str() {
            "aboveAll" => Ok(AttachKind::AboveAll),
            "incomparable" => Ok(AttachKind::Incomparable),
            "abovePrefix" => Ok(AttachKind::AbovePrefix(self.paren_number()?)),
            "belowIndex" => Ok(AttachKind::BelowIndex(self.paren_number()?)),
            other => Err(DslError::Parse {
                pos,
                msg: format!(
                    "unknown attachment `{other}` (expected aboveAll, abovePrefix(k), belowIndex(k) or incomparable)"
                ),
            }),
        }
    }

    fn omegaposet(&mut self) -> PResult<Item> {
        let name = self.ident()?;
        self.expect(Tok::LBrace)?;
        let finite = self.field("finite", |p| p.comma_list(Self::ident))?;
        let order = if self.is_keyword("order") { self.field("order", Self::order_list)? } else { Vec::new() };
        let mut attach = Vec::new();
        while self.is_keyword("attach") {
            attach.push(self.field("attach", |p| Ok((p.ident()?, p.attach_kind()?)))?);
        }
        self.expect(Tok::RBrace)?;
        Ok(Item::OmegaPoset { name, finite, order, attach })
    }

    fn space(&mut self) -> PResult<Item> {
        let name = self.ident()?;
        self.expect(Tok::Equals)?;
        let pos = self.pos();
        let kind = self.ident()?;
        let def = match kind.as_str() {
            "alexandroff" => SpaceDef::Alexandroff(self.paren_ident()?),
            "upper" => SpaceDef::Upper(self.paren_ident()?),
            "weakscott" => SpaceDef::WeakScott(self.paren_ident()?),
            "scott" => SpaceDef::Scott(self.paren_ident()?),
            "cofinite" => SpaceDef::Cofinite(self.paren_ident()?),
            "si2" => SpaceDef::Si2(self.paren_ident()?),
            "explicit" => {
                let carrier = self.paren_ident()?;
                self.expect(Tok::LBrace)?;
                let opens = self.field("opens", |p| p.comma_list(Self::set_lit))?;
                self.expect(Tok::RBrace)?;
                self.eat(&Tok::Semi);
                return Ok(Item::Space { name, def: SpaceDef::Explicit { carrier, opens } });
            }
            other => {
                return Err(DslError::Parse { pos, msg: format!("unknown topology `{other}`") });
            }
        };
        self.expect(Tok::Semi)?;
        Ok(Item::Space { name, def })
    }

    fn strand(&mut self) -> PResult<StrandDef> {
        let pos = self.pos();
        match self.ident()?.as_str() {
            "chainCofinal" => Ok(StrandDef::ChainCofinal(self.paren_number()?)),
            "constant" => {
                self.expect(Tok::LParen)?;
                let p = self.point()?;
                self.expect(Tok::RParen)?;
                Ok(StrandDef::Constant(p))
            }
            other => Err(DslError::Parse { pos, msg: format!("unknown strand `{other}`") }),
        }
    }

    fn net(&mut self) -> PResult<Item> {
        let name = self.ident()?;
        self.keyword("over")?;
        let over = self.ident()?;
        self.expect(Tok::LBrace)?;
        let strands = self.field("strands", |p| p.comma_list(Self::strand))?;
        self.expect(Tok::RBrace)?;
        Ok(Item::Net { name, over, strands })
    }

    fn check(&mut self) -> PResult<Item> {
        let pos = self.pos();
        let kw = self.ident()?;
        let kind = CheckKind::from_keyword(&kw)
            .ok_or_else(|| DslError::Parse { pos, msg: format!("unknown check `{kw}`") })?;
        let target = self.ident()?;
        let mut args = Vec::new();
        for _ in 0..kind.arity() {
            args.push(self.set_lit()?);
        }
        self.expect(Tok::Semi)?;
        Ok(Item::Check { kind, target, args })
    }

    fn item(&mut self) -> PResult<Item> {
        let pos = self.pos();
        let kw = self.ident()?;
        match kw.as_str() {
            "poset" => self.poset(),
            "omegaposet" => self.omegaposet(),
            "antichain" => {
                let name = self.ident()?;
                self.keyword("omega")?;
                self.expect(Tok::Semi)?;
                Ok(Item::Antichain { name })
            }
            "space" => self.space(),
            "net" => self.net(),
            "check" => self.check(),
            "convention" => {
                let pos = self.pos();
                let c = self.ident()?;
                let c = ConventionSetting::from_keyword(&c).ok_or_else(|| DslError::Parse {
                    pos,
                    msg: format!("unknown convention `{c}` (expected standard, empty or both)"),
                })?;
                self.expect(Tok::Semi)?;
                Ok(Item::Convention(c))
            }
            other => Err(DslError::Parse { pos, msg: format!("unknown declaration `{other}`") }),
        }
    }
}

pub fn parse(text: &str) -> Result<DslDocument, DslError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let mut doc = DslDocument::default();
    while *p.peek() != Tok::Eof {
        doc.positions.push(p.pos());
        doc.items.push(p.item()?);
    }
    Ok(doc)
}
