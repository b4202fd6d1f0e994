import numpy as np, math
from fractions import Fraction
P=3_000_000
sieve=np.ones(P+1,bool); sieve[:2]=False
for i in range(2,int(P**.5)+1):
    if sieve[i]: sieve[i*i::i]=False
primes=np.nonzero(sieve)[0]
def nroots(p):
    # count roots of x^3-4x+1 mod p via gcd with x^p-x
    if p<50:
        return sum(1 for x in range(p) if (x**3-4*x+1)%p==0)
    f=[1,0,(-4)%p,1] # x^3 + 0x^2 -4x +1 high->low
    def mulmod(a,b):
        # a,b low->high deg<3
        r=[0]*5
        for i,x in enumerate(a):
            if x:
                for j,y in enumerate(b):
                    r[i+j]=(r[i+j]+x*y)%p
        # reduce x^3 = 4x -1
        for d in (4,3):
            c=r[d]
            if c:
                r[d]=0; r[d-2]=(r[d-2]+4*c)%p; r[d-3]=(r[d-3]-c)%p
        return r[:3]
    res=[1,0,0]; base=[0,1,0]; e=p
    while e:
        if e&1: res=mulmod(res,base)
        base=mulmod(base,base); e>>=1
    g=[(res[0])%p,(res[1]-1)%p,res[2]%p]  # x^p - x mod f
    # gcd of f (deg3) and g
    def trim(a):
        while a and a[-1]==0: a.pop()
        return a
    A=[1,(-4)%p,0,1]; B=trim(g[:])
    while B:
        # A mod B
        A=A[:]
        inv=pow(B[-1],p-2,p)
        while len(A)>=len(B):
            c=A[-1]*inv%p; s=len(A)-len(B)
            for i in range(len(B)): A[s+i]=(A[s+i]-c*B[i])%p
            A=trim(A)
            if not A: break
        A,B=B,A
    return len(A)-1
logL=0.0
for p in primes:
    p=int(p)
    if p==229:
        logL+= -math.log(1-p**-2); continue
    if p==2 or p==3 or pow(229% p, (p-1)//2, p)!=1 and p>3 :
        pass
    n=nroots(p)
    s=p**-2.0
    if n==3: logL+=-2*math.log(1-s)
    elif n==1: logL+=-math.log(1-s*s)
    elif n==0: logL+=-math.log(1+s+s*s)
    else: raise Exception((p,n))
L2=math.exp(logL)
Lm1=229**1.5*L2/(4*math.pi**4)
print(L2,Lm1, Lm1*2)
