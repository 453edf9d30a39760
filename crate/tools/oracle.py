"""High-precision reference values frozen into the Rust tests.

Independent of the Rust code: closed forms are evaluated with 40-digit
mpmath and roots come from mpmath.findroot. Run with `python3 tools/oracle.py`.
"""
from mpmath import mp, mpf, sqrt, log, exp, findroot
mp.dps=40
fams={'sqrt':lambda x: sqrt(x),'log1p':lambda x: log(x+1),'satexp':lambda x: 1-10*exp(-x/100)}
print('satexp(110)', fams['satexp'](mpf(110)))
print('15+sqrt110', 15+sqrt(110))
r=(sqrt(110)-sqrt(10))/(sqrt(110)-10); print('ratio', r)
gs=(-r+sqrt(r*r+8))/2; print('gamma*', gs, 'check', (2-gs**2)/gs - r)
def price(vo,vr,g): return ((2-g*g)*vo-g*vr)/(4-g*g)
def prof(vo,vr,g): return price(vo,vr,g)**2/(1-g*g)
g=mpf('0.5'); v1=30; v2=15+sqrt(10)
p1=price(v1,v2,g);p2=price(v2,v1,g); print('ML g.5 prices',p1,p2,'q1',p1/(1-g*g))
print('FL price', price(20+sqrt(110),15+sqrt(110),g))
print('gamma0 pis', prof(30,15+sqrt(10),0), prof(20+sqrt(110),15+sqrt(110),0))
print('CS g0', (30**2+(15+sqrt(10))**2)/8)
# boundary for part i
print('gb part i', findroot(lambda g:(2-g*g)/g-mpf(4)/3, 0.9))
def S(g,f,d1,d2,v1=20,v2=15):
  F=f(mpf(d1+d2)); a1=v1+f(mpf(d1)); a2=v2+f(mpf(d2)); b1=v1+F;b2=v2+F
  return prof(b1,b2,g)-prof(a1,a2,g)+prof(b2,b1,g)-prof(a2,a1,g)
for name,f in fams.items():
  for d1 in (100,50,30):
    d2=10; F=f(mpf(d1+d2)); r=(F-f(mpf(d2)))/(F-f(mpf(d1))); gs=(-r+sqrt(r*r+8))/2
    # gmax: corner ML ratio and FL ratio and grid extremes
    vs=[(20+f(mpf(d1)),15+f(mpf(d2))),(20+F,15+F),(20+f(mpf(d1)),15+f(mpf(d2)/8)),(20+f(mpf(d1)/8),15+f(mpf(d2)))]
    rho=max(max(a/b,b/a) for a,b in vs)
    gm=(-rho+sqrt(rho*rho+8))/2
    s_at_gm=S(gm,f,d1,d2)
    try: gh=findroot(lambda g:S(g,f,d1,d2),(gs+1e-9, min(gm,0.999)),solver='bisect') 
    except Exception as e: gh=None
    print(name,d1,'ratio',float(r),'g*',float(gs),'gmax',float(gm),'S(gmax)',float(s_at_gm),'ghat',gh)
