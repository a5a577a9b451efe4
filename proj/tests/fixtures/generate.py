#!/usr/bin/env python3
"""Regenerates realistic.html and the corpus/ sites. Output is deterministic."""
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))

WORDS = """able account across action address advice afford agent agree ahead allow almost alone along already
amount animal answer anyone appear apply area argue around arrive article artist assume attack author avoid
award aware balance basic beauty become before begin behind believe benefit better beyond billion board body
border bottle branch bread break bring brother budget build burden button buyer cable camera campaign cancel
capital career carry catch cause center central chair chance change charge check choice church citizen claim
class clear client climb clock close coach coast coffee collect color column comfort common company compare
concern contain control corner cotton couple course court cover create credit crowd culture current custom
damage dance danger daughter debate decade decide degree deliver demand depend design detail device dinner
direct doctor double dream drive early earth easily economy editor effort eight either energy engine enjoy
enough entire escape estate evening event exact example expect expert extra fabric factor family farmer
father feature field figure final finger finish floor flower focus follow forest forget format forward frame
friend front future garden gather general gentle glass global golden ground growth guess guide handle happen
harbor health heart heavy height history holiday honest horse hotel house human hunter image impact income
indeed inside island itself jacket journey judge junior kitchen label labor language large later launch layer
leader league learn leather legal lesson letter level light limit linen liquid listen little local lovely
machine manage market master matter meadow measure medium member memory method middle minute mirror modern
moment monitor morning mother motion mountain museum nation nature nearly network never night normal notice
number object office online option orange order origin outdoor owner paint paper parent partner pattern
people pepper period person phone piece planet plastic player pocket policy portrait potato powder prefer
present pretty price print private process produce profit project proper public purple quality quarter
question quick quiet radio rather reach reader reason record region remain remote repair report result return
review river rocket rubber safety salad sample season second secret section select senior series service
settle seven shadow share shelter short shoulder silver simple single sister skill smooth social soft source
space speak special sport spring square stable staff stage standard station steel stone store story street
strong studio style subject summer supply surface system table talent target teacher temple tennis theory
thing throw ticket timber today topic total toward tower travel trouble truck twelve unique update useful
valley value velvet version video village vision visit volume wagon walnut water weather weekend welcome
western whole window winter wooden worker writer yellow yesterday young""".split()


class Gen:
    def __init__(self, seed, ver):
        self.r = random.Random(seed)
        self.v = ver
        self.d = "data-bs-" if ver == 5 else "data-"
        self.n = 0

    def uid(self, stem):
        self.n += 1
        return f"{stem}{self.n}"

    def words(self, lo, hi):
        return " ".join(self.r.choice(WORDS) for _ in range(self.r.randint(lo, hi)))

    def title(self, lo=2, hi=4):
        return self.words(lo, hi).title()

    def para(self, lo=25, hi=70):
        s = self.words(lo, hi)
        return s[0].upper() + s[1:] + "."

    def close(self, kind):
        if self.v == 5:
            return f'<button type="button" class="btn-close" {self.d}dismiss="{kind}" aria-label="Close"></button>'
        return f'<button type="button" class="close" {self.d}dismiss="{kind}" aria-label="Close"><span aria-hidden="true">&times;</span></button>'

    # components
    def navbar(self, brand, dropdowns=1):
        nid = self.uid("nav")
        items = []
        for _ in range(3):
            items.append(f'<li class="nav-item"><a class="nav-link" href="/{self.r.choice(WORDS)}">{self.title(1, 2)}</a></li>')
        for _ in range(dropdowns):
            menu = "\n".join(f'<a class="dropdown-item" href="/{self.r.choice(WORDS)}/{self.r.choice(WORDS)}">{self.title(1, 3)}</a>' for _ in range(5))
            items.append(f"""<li class="nav-item dropdown">
  <a class="nav-link dropdown-toggle" href="#" role="button" {self.d}toggle="dropdown" aria-expanded="false">{self.title(1, 2)}</a>
  <div class="dropdown-menu">
{menu}
  </div>
</li>""")
        toggler_attr = f'{self.d}toggle="collapse" {self.d}target="#{nid}"'
        return f"""<nav class="navbar navbar-expand-lg navbar-light bg-light">
<div class="container-fluid">
<a class="navbar-brand" href="/">{brand}</a>
<button class="navbar-toggler" type="button" {toggler_attr} aria-controls="{nid}" aria-expanded="false" aria-label="Toggle navigation"><span class="navbar-toggler-icon"></span></button>
<div class="collapse navbar-collapse" id="{nid}">
<ul class="navbar-nav me-auto mr-auto mb-2 mb-lg-0">
{chr(10).join(items)}
</ul>
<form class="d-flex" role="search" action="/search"><input class="form-control me-2" type="search" name="q" placeholder="Search" aria-label="Search"><button class="btn btn-outline-success" type="submit">Search</button></form>
</div>
</div>
</nav>"""

    def dropdown(self):
        menu = "\n".join(f'  <li><a class="dropdown-item" href="/{self.r.choice(WORDS)}">{self.title(1, 3)}</a></li>' for _ in range(4))
        return f"""<div class="dropdown d-inline-block">
  <button class="btn btn-outline-secondary dropdown-toggle" type="button" {self.d}toggle="dropdown" aria-expanded="false">{self.title(1, 2)}</button>
  <ul class="dropdown-menu">
{menu}
  </ul>
</div>"""

    def collapse(self):
        cid = self.uid("more")
        return f"""<p><a class="btn btn-link" {self.d}toggle="collapse" href="#{cid}" role="button" aria-expanded="false" aria-controls="{cid}">{self.title(2, 3)}</a></p>
<div class="collapse" id="{cid}"><div class="card card-body">{self.para()}</div></div>"""

    def accordion(self, n=4):
        aid = self.uid("faq")
        items = []
        for i in range(n):
            cid = self.uid("q")
            show = " show" if i == 0 else ""
            if self.v == 5:
                items.append(f"""<div class="accordion-item">
<h2 class="accordion-header"><button class="accordion-button{'' if i == 0 else ' collapsed'}" type="button" data-bs-toggle="collapse" data-bs-target="#{cid}" aria-expanded="{'true' if i == 0 else 'false'}" aria-controls="{cid}">{self.title(3, 6)}?</button></h2>
<div id="{cid}" class="accordion-collapse collapse{show}" data-bs-parent="#{aid}"><div class="accordion-body">{self.para()}</div></div>
</div>""")
            else:
                items.append(f"""<div class="card">
<div class="card-header"><h5 class="mb-0"><button class="btn btn-link" data-toggle="collapse" data-target="#{cid}" aria-expanded="{'true' if i == 0 else 'false'}" aria-controls="{cid}">{self.title(3, 6)}?</button></h5></div>
<div id="{cid}" class="collapse{show}" data-parent="#{aid}"><div class="card-body">{self.para()}</div></div>
</div>""")
        cls = "accordion" if self.v == 5 else ""
        return f'<div class="{cls}" id="{aid}">\n' + "\n".join(items) + "\n</div>"

    def modal(self):
        mid = self.uid("dlg")
        return f"""<button type="button" class="btn btn-primary" {self.d}toggle="modal" {self.d}target="#{mid}">{self.title(1, 2)}</button>
<div class="modal fade" id="{mid}" tabindex="-1" aria-labelledby="{mid}-title" aria-hidden="true">
<div class="modal-dialog"><div class="modal-content">
<div class="modal-header"><h5 class="modal-title" id="{mid}-title">{self.title()}</h5>{self.close('modal')}</div>
<div class="modal-body"><p>{self.para()}</p><p>{self.para()}</p></div>
<div class="modal-footer"><button type="button" class="btn btn-secondary" {self.d}dismiss="modal">Close</button></div>
</div></div>
</div>"""

    def tabs(self, n=3):
        tid = self.uid("tabs")
        links, panes = [], []
        for i in range(n):
            pid = self.uid("pane")
            act = " active" if i == 0 else ""
            if self.v == 5:
                links.append(f'<li class="nav-item" role="presentation"><button class="nav-link{act}" data-bs-toggle="tab" data-bs-target="#{pid}" type="button" role="tab" aria-controls="{pid}" aria-selected="{"true" if i == 0 else "false"}">{self.title(1, 2)}</button></li>')
            else:
                links.append(f'<li class="nav-item"><a class="nav-link{act}" data-toggle="tab" href="#{pid}" role="tab" aria-controls="{pid}" aria-selected="{"true" if i == 0 else "false"}">{self.title(1, 2)}</a></li>')
            panes.append(f'<div class="tab-pane fade{" show active" if i == 0 else ""}" id="{pid}" role="tabpanel"><p>{self.para(40, 90)}</p></div>')
        return f'<ul class="nav nav-tabs" id="{tid}" role="tablist">\n' + "\n".join(links) + '\n</ul>\n<div class="tab-content">\n' + "\n".join(panes) + "\n</div>"

    def carousel(self, n=3):
        cid = self.uid("hero")
        items = []
        for i in range(n):
            items.append(f'<div class="carousel-item{" active" if i == 0 else ""}"><img src="/img/{self.r.choice(WORDS)}-{i}.jpg" class="d-block w-100" alt="{self.words(3, 6)}"><div class="carousel-caption d-none d-md-block"><h5>{self.title()}</h5><p>{self.para(8, 16)}</p></div></div>')
        if self.v == 5:
            ctl = f"""<button class="carousel-control-prev" type="button" data-bs-target="#{cid}" data-bs-slide="prev"><span class="carousel-control-prev-icon" aria-hidden="true"></span><span class="visually-hidden">Previous</span></button>
<button class="carousel-control-next" type="button" data-bs-target="#{cid}" data-bs-slide="next"><span class="carousel-control-next-icon" aria-hidden="true"></span><span class="visually-hidden">Next</span></button>"""
        else:
            ctl = f"""<a class="carousel-control-prev" href="#{cid}" role="button" data-slide="prev"><span class="carousel-control-prev-icon" aria-hidden="true"></span><span class="sr-only">Previous</span></a>
<a class="carousel-control-next" href="#{cid}" role="button" data-slide="next"><span class="carousel-control-next-icon" aria-hidden="true"></span><span class="sr-only">Next</span></a>"""
        return f'<div id="{cid}" class="carousel slide" {self.d}ride="carousel">\n<div class="carousel-inner">\n' + "\n".join(items) + "\n</div>\n" + ctl + "\n</div>"

    def tooltip(self):
        return f'<a href="/{self.r.choice(WORDS)}" class="link-secondary" {self.d}toggle="tooltip" title="{self.words(2, 5)}">{self.title(1, 2)}</a>'

    def popover(self):
        return f'<button type="button" class="btn btn-sm btn-outline-info" {self.d}toggle="popover" title="{self.title()}" {self.d}content="{self.words(6, 14)}">{self.title(1, 2)}</button>'

    def alert(self):
        return f'<div class="alert alert-info alert-dismissible fade show" role="alert">{self.para(8, 20)} {self.close("alert")}</div>'

    def toast(self):
        return f"""<div class="toast show" role="status" aria-live="polite" aria-atomic="true"><div class="toast-header"><strong class="me-auto mr-auto">{self.title(1, 2)}</strong><small>{self.r.randint(2, 59)} min ago</small>{self.close('toast')}</div><div class="toast-body">{self.para(6, 14)}</div></div>"""

    def offcanvas(self):
        oid = self.uid("panel")
        return f"""<button class="btn btn-outline-primary" type="button" data-bs-toggle="offcanvas" data-bs-target="#{oid}" aria-controls="{oid}">{self.title(1, 2)}</button>
<div class="offcanvas offcanvas-end" tabindex="-1" id="{oid}" aria-labelledby="{oid}-t"><div class="offcanvas-header"><h5 class="offcanvas-title" id="{oid}-t">{self.title()}</h5><button type="button" class="btn-close" data-bs-dismiss="offcanvas" aria-label="Close"></button></div><div class="offcanvas-body"><p>{self.para()}</p></div></div>"""

    # filler
    def card(self):
        price = f"{self.r.randint(5, 400)}.{self.r.randint(0, 99):02d}"
        slug = "-".join(self.r.choice(WORDS) for _ in range(3))
        return f"""<div class="col"><div class="card h-100 shadow-sm">
<img src="/img/products/{slug}.jpg" class="card-img-top" alt="{self.words(3, 6)}" loading="lazy" width="400" height="300">
<div class="card-body"><h5 class="card-title"><a href="/p/{slug}" class="stretched-link text-decoration-none">{self.title()}</a></h5>
<p class="card-text text-muted small">{self.para(12, 30)}</p></div>
<div class="card-footer d-flex justify-content-between align-items-center"><span class="fw-bold">&euro;{price}</span><span class="badge bg-secondary">{self.r.choice(['new', 'sale', 'limited', 'popular'])}</span></div>
</div></div>"""

    def article(self):
        return f"<article class=\"mb-5\"><h2 class=\"h4\">{self.title(3, 7)}</h2>" + "".join(f"<p>{self.para(40, 110)}</p>" for _ in range(self.r.randint(2, 4))) + "</article>"

    def footer(self, cols=4):
        blocks = []
        for _ in range(cols):
            links = "".join(f'<li class="mb-1"><a class="link-secondary text-decoration-none" href="/{self.r.choice(WORDS)}/{self.r.choice(WORDS)}">{self.title(1, 3)}</a></li>' for _ in range(7))
            blocks.append(f'<div class="col-6 col-md-3"><h5>{self.title(1, 2)}</h5><ul class="list-unstyled">{links}</ul></div>')
        return '<footer class="container py-5 border-top"><div class="row">' + "".join(blocks) + f'</div><p class="small text-muted mt-4">&copy; 2023 {self.title(1, 2)}. {self.para(10, 20)}</p></footer>'


def head(g, title):
    if g.v == 5:
        css = '<link href="https://cdn.jsdelivr.net/npm/bootstrap@5.3.2/dist/css/bootstrap.min.css" rel="stylesheet" integrity="sha384-T3c6CoIi6uLrA9TneNEoa7RxnatzjcDSCmG1MXxSR1GAsXEV/Dwwykc2MPK8M2HN" crossorigin="anonymous">'
        js = '<script src="https://cdn.jsdelivr.net/npm/bootstrap@5.3.2/dist/js/bootstrap.bundle.min.js" integrity="sha384-C6RzsynM9kWDrMNeT87bh95OGNyZPhcTNXj1NW7RuBCsyN/o0jlpcV8Qyq46cDfL" crossorigin="anonymous"></script>'
    elif g.v == 4:
        css = '<link rel="stylesheet" href="https://stackpath.bootstrapcdn.com/bootstrap/4.5.2/css/bootstrap.min.css">'
        js = '<script src="https://code.jquery.com/jquery-3.5.1.slim.min.js"></script>\n<script src="https://stackpath.bootstrapcdn.com/bootstrap/4.5.2/js/bootstrap.min.js"></script>'
    else:
        css = '<link rel="stylesheet" href="/static/site.css">'
        js = '<script src="/static/app.js" defer></script>'
    analytics = f"""<script>
window.dataLayer = window.dataLayer || [];
function gtag(){{dataLayer.push(arguments);}}
gtag('js', new Date());
gtag('config', 'G-{g.r.randint(10**9, 10**10 - 1)}');
</script>"""
    return f"""<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>{title}</title>
<meta name="description" content="{g.para(12, 24)}">
<link rel="canonical" href="/">
<link rel="icon" href="/favicon.ico">
{css}
{analytics}
</head>""", js


def realistic():
    g = Gen(20230901, 5)
    brand = "Harbour &amp; Linen"
    h, js = head(g, f"{brand} | Home textiles")
    grid = "\n".join(g.card() for _ in range(36))
    body = f"""
<body>
{g.navbar(brand, dropdowns=2)}
<div class="container-fluid bg-warning-subtle py-1 text-center small">{g.para(6, 12)} {g.tooltip()}</div>
<main class="container my-4">
{g.alert()}
{g.carousel(4)}
<section class="my-5"><h1 class="display-5">{g.title(3, 5)}</h1><p class="lead">{g.para(30, 50)}</p>
<p>{g.modal()} {g.popover()} {g.offcanvas()}</p></section>
<section class="my-5"><div class="d-flex justify-content-between"><h2>{g.title()}</h2>{g.dropdown()}</div>
<div class="row row-cols-1 row-cols-sm-2 row-cols-md-3 row-cols-lg-4 g-4">
{grid}
</div></section>
<section class="my-5">{g.tabs(3)}</section>
<section class="my-5 row"><div class="col-lg-8">{''.join(g.article() for _ in range(6))}</div>
<aside class="col-lg-4"><h3 class="h5">{g.title()}</h3>{g.collapse()}{g.collapse()}<p>{g.tooltip()} {g.tooltip()}</p></aside></section>
<section class="my-5"><h2>{g.title(2, 3)}</h2>{g.accordion(5)}</section>
<div class="position-fixed bottom-0 end-0 p-3">{g.toast()}</div>
</main>
{g.footer()}
{js}
</body>
</html>
"""
    return h + body


MIX = [
    # (site, version, per page component lists); pages: index, about, products, contact
    ("site1", 5, [["navbar", "modal", "carousel"], ["navbar", "collapse"], ["navbar", "dropdown", "tooltip"], ["navbar"]]),
    ("site2", 4, [["navbar", "accordion", "modal"], ["navbar", "collapse", "dropdown"], ["navbar", "tabs"], ["navbar", "alert"]]),
    ("site3", 0, [[], [], [], []]),
    ("site4", 5, [["collapse", "dropdown", "modal"], ["collapse", "popover"], ["dropdown", "offcanvas"], ["collapse", "toast"]]),
    ("site5", 4, [["collapse", "dropdown", "modal", "tooltip"], ["dropdown", "modal"], ["collapse", "accordion"], ["carousel", "dropdown", "alert"]]),
]
PAGES = ["index.html", "about.html", "products.html", "contact.html"]


def site_page(name, ver, comps, idx, seed):
    g = Gen(seed, ver if ver else 5)
    if not ver:
        g.v, g.d = 0, "data-x-"
    h, js = head(g, f"{name} - {g.title()}")
    parts = []
    nav_links = '<nav class="site-nav"><a href="/">Home</a> <a href="/about.html">About</a> <a href="/products.html">Products</a> <a href="/contact.html">Contact</a> <a href="#top">Top</a> <a href="https://example.org/partner">Partner</a> <a href="mailto:hello@example.org">Mail</a></nav>'
    parts.append(nav_links)
    for c in comps:
        if c == "navbar":
            parts.append(g.navbar(name.title(), dropdowns=0))
        else:
            parts.append(getattr(g, c)())
    for _ in range(g.r.randint(3, 6)):
        parts.append(g.article())
    if idx == 2:
        parts.append('<div class="row">' + "".join(g.card() for _ in range(8)) + "</div>")
    parts.append(g.footer(3))
    return h + '\n<body id="top">\n<main class="container">\n' + "\n".join(parts) + "\n</main>\n" + js + "\n</body>\n</html>\n"


def main():
    with open(os.path.join(HERE, "realistic.html"), "w") as f:
        f.write(realistic())
    for s, (name, ver, pages) in enumerate(MIX):
        d = os.path.join(HERE, "corpus", name)
        os.makedirs(d, exist_ok=True)
        for i, comps in enumerate(pages):
            with open(os.path.join(d, PAGES[i]), "w") as f:
                f.write(site_page(name, ver, comps, i, 1000 * s + i))


if __name__ == "__main__":
    main()
