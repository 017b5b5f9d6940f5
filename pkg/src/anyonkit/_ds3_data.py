"""F- and R-symbol tables of D(S3) in compact text form.

Keys are written ``abc;d`` for F^{abc}_d and ``abc`` for R^{ab}_c.  A matrix
row index is the intermediate charge of b and c, the column index that of a
and b, both sorted in the basis order A, B, G, D, E, F, C, H.  Admissible
symbols that are missing from these tables equal 1.
"""

# 1x1 blocks equal to -1
F_MINUS_ONE = """
    BGG;G GBG;G GGB;G GGG;B BDB;D BEB;E BDG;E BEG;D GDB;E GEB;D
    DGE;B EGD;B FFF;B FCH;B CCC;B HCF;B HHH;B BGC;H BGH;F BGH;C
    BFG;C BCG;F BCG;H BHG;C GBF;H GBC;H GBH;C GFB;C GCB;F GCB;H
    GHB;C FBG;H CBG;H CGB;H HBG;C HGB;F HGB;C BDD;F BED;F DBD;B
    DBE;G DBE;C DBE;H DDB;F DEB;F EBD;G EBD;C EBD;H EBE;B BDC;E
    BDH;E BEC;D BEH;D BFD;D BFD;E DBF;D DFB;D DFB;E EBF;D FBD;D
    FBE;D CDB;E CEB;D HDB;E HEB;D BFF;F BFC;H BFH;G BCC;C BCH;G
    BHC;G BHC;F BHH;H FBF;F FBC;G FBH;C FFB;F CBF;G CBC;C CBH;G
    CFB;H CCB;C CHB;G CHB;F HBF;C HBC;G HBH;H HFB;G HCB;G HHB;H
    GCH;B GHF;B GHC;B FGC;B FHG;B CGF;B CGH;B CHG;B HGC;B HCG;B
    DDF;B DCE;B DHE;B EDF;B ECD;B EHD;B FDD;B FDE;B
"""

# (prefactor, entries, keys); entries are "0", "+-n", "+-sqrtn"
F_MATRICES = (
    ('1/2', (('1', '1', 'sqrt2'), ('1', '1', '-sqrt2'), ('sqrt2', '-sqrt2', '0')),
     "GGG;G"),
    ('1/sqrt2', (('1', '1'), ('1', '-1')),
     "GGD;D GGE;E DGG;D EGG;E"),
    ('1/sqrt2', (('1', '-1'), ('1', '1')),
     "GGD;E GGE;D"),
    ('1/sqrt2', (('1', '1'), ('-1', '1')),
     "DGG;E EGG;D"),
    ('1/2', (('-1', '-sqrt3'), ('-sqrt3', '1')),
     "GDG;D"),
    ('1/2', (('-sqrt3', '1'), ('1', 'sqrt3')),
     "GDG;E GEG;D"),
    ('1/2', (('1', 'sqrt3'), ('sqrt3', '-1')),
     "GEG;E"),
    ('1/sqrt2', (('1', '1'), ('1', '-1')),
     "GGF;F GGC;C GGH;H FGG;F CGG;C HGG;H"),
    ('1', (('0', '1'), ('1', '0')),
     "GFG;F GCG;C GHG;H"),
    ('1/sqrt2', (('1', '1'), ('1', '-1')),
     "GDD;G GDD;C GDD;H GEE;G GEE;C GEE;H DDG;G DDG;C DDG;H EEG;G EEG;C EEG;H"),
    ('1/sqrt2', (('1', '-1'), ('1', '1')),
     "GDD;F GED;F DEG;G DEG;H EDG;G EDG;F EDG;C EEG;F"),
    ('1/sqrt2', (('1', '1'), ('-1', '1')),
     "GDE;G GDE;F GDE;C GED;G GED;H GEE;F DDG;F DEG;F"),
    ('1/sqrt2', (('-1', '-1'), ('-1', '1')),
     "GDE;H GED;C DEG;C EDG;H"),
    ('1/2', (('-1', '-sqrt3'), ('-sqrt3', '1')),
     "DGD;G DGD;F"),
    ('1/2', (('-1', 'sqrt3'), ('sqrt3', '1')),
     "DGD;C"),
    ('1', (('1', '0'), ('0', '-1')),
     "DGD;H"),
    ('1/2', (('-sqrt3', '1'), ('1', 'sqrt3')),
     "DGE;G EGD;G"),
    ('1/2', (('-sqrt3', '-1'), ('1', '-sqrt3')),
     "DGE;F"),
    ('1/2', (('sqrt3', '1'), ('1', '-sqrt3')),
     "DGE;C EGD;C"),
    ('1', (('0', '-1'), ('-1', '0')),
     "DGE;H EGD;H"),
    ('1/2', (('-sqrt3', '1'), ('-1', '-sqrt3')),
     "EGD;F"),
    ('1/2', (('1', 'sqrt3'), ('sqrt3', '-1')),
     "EGE;G"),
    ('1/2', (('1', '-sqrt3'), ('-sqrt3', '-1')),
     "EGE;F EGE;C"),
    ('1', (('-1', '0'), ('0', '1')),
     "EGE;H"),
    ('1/2', (('-1', '-sqrt3'), ('-sqrt3', '1')),
     "GDF;D FDG;D"),
    ('1/2', (('-sqrt3', '-1'), ('1', '-sqrt3')),
     "GDF;E FEG;D"),
    ('1/2', (('-1', 'sqrt3'), ('sqrt3', '1')),
     "GDC;D CDG;D"),
    ('1/2', (('sqrt3', '1'), ('1', '-sqrt3')),
     "GDC;E GEC;D CDG;E CEG;D"),
    ('1', (('1', '0'), ('0', '-1')),
     "GDH;D HDG;D"),
    ('1', (('0', '-1'), ('-1', '0')),
     "GDH;E GEH;D HDG;E HEG;D"),
    ('1/2', (('-sqrt3', '1'), ('-1', '-sqrt3')),
     "GEF;D FDG;E"),
    ('1/2', (('1', '-sqrt3'), ('-sqrt3', '-1')),
     "GEF;E GEC;E FEG;E CEG;E"),
    ('1', (('-1', '0'), ('0', '1')),
     "GEH;E HEG;E"),
    ('1/sqrt2', (('1', '1'), ('-1', '1')),
     "GFD;D GFD;E DGF;E DGC;E DHG;E EGF;E EGH;D EFG;D EFG;E ECG;D FGD;D FGE;D"),
    ('1/sqrt2', (('1', '-1'), ('1', '1')),
     "GFE;D GFE;E GCE;D GHD;E DGF;D DFG;D DFG;E EGF;D FGD;E FGE;E CGD;E HGE;D"),
    ('1/sqrt2', (('1', '1'), ('1', '-1')),
     "GCD;D GCE;E GHD;D GHE;E DGC;D DGH;D DCG;D DHG;D EGC;E EGH;E ECG;E EHG;E "
     "CGD;D CGE;E HGD;D HGE;E"),
    ('1/sqrt2', (('-1', '-1'), ('-1', '1')),
     "GCD;E GHE;D DGH;E DCG;E EGC;D EHG;D CGE;D HGD;E"),
    ('1/sqrt2', (('1', '1'), ('1', '-1')),
     "GFF;G GCC;G GHH;G FFG;G CCG;G HHG;G"),
    ('1', (('0', '1'), ('1', '0')),
     "FGF;G CGC;G HGH;G"),
    ('1/3', (('1', 'sqrt2', 'sqrt2', 'sqrt2', 'sqrt2'), ('sqrt2', '-1', '-1', '-1', '2'), ('sqrt2', '-1', '2', '-1', '-1'), ('sqrt2', '-1', '-1', '2', '-1'), ('sqrt2', '2', '-1', '-1', '-1')),
     "DDD;D EEE;E"),
    ('1/sqrt3', (('-1', '-1', '1', '0'), ('-1', '0', '-1', '-1'), ('1', '-1', '0', '-1'), ('0', '-1', '-1', '1')),
     "DDD;E DDE;D DED;D EDD;D"),
    ('1/3', (('1', '-sqrt2', 'sqrt2', '-sqrt2', '-sqrt2'), ('sqrt2', '1', '-1', '1', '-2'), ('sqrt2', '1', '2', '1', '1'), ('sqrt2', '1', '-1', '-2', '1'), ('sqrt2', '-2', '-1', '1', '1')),
     "DDE;E EED;D"),
    ('1/3', (('-1', 'sqrt2', 'sqrt2', 'sqrt2', 'sqrt2'), ('sqrt2', '1', '1', '1', '-2'), ('sqrt2', '1', '-2', '1', '1'), ('sqrt2', '1', '1', '-2', '1'), ('sqrt2', '-2', '1', '1', '1')),
     "DED;E EDE;D"),
    ('1/3', (('1', 'sqrt2', 'sqrt2', 'sqrt2', 'sqrt2'), ('-sqrt2', '1', '1', '1', '-2'), ('sqrt2', '-1', '2', '-1', '-1'), ('-sqrt2', '1', '1', '-2', '1'), ('-sqrt2', '-2', '1', '1', '1')),
     "DEE;D EDD;E"),
    ('1/sqrt3', (('1', '-1', '-1', '0'), ('-1', '0', '-1', '-1'), ('-1', '-1', '0', '1'), ('0', '-1', '1', '-1')),
     "DEE;E EDE;E EED;E EEE;D"),
    ('1/sqrt2', (('1', '1'), ('-1', '1')),
     "DDF;G DDF;H DDC;H DDH;F DDH;C DEH;F EDF;G EDF;H EEC;H EEH;C FED;G FED;H "
     "FEE;G FEE;F FEE;H CDE;C CED;G CED;C HDE;G HDE;F HDE;H HED;H HEE;F"),
    ('1/sqrt2', (('1', '1'), ('1', '-1')),
     "DDF;F DDF;C DDC;G DDC;F DDC;C DDH;G DDH;H DEC;F EDF;C EEC;G EEC;C EEH;G "
     "EEH;H FDD;F FDD;C FDE;C CDD;G CDD;F CDD;C CED;F CEE;G CEE;C HDD;G HDD;H "
     "HEE;G HEE;H"),
    ('1/sqrt2', (('1', '-1'), ('1', '1')),
     "DEF;G DEF;H DEC;G DEC;C DEH;H EDC;C EDH;G EDH;F EDH;H EEF;G EEF;F EEF;H "
     "EEH;F FDD;G FDD;H FDE;G FDE;H CDD;H CEE;H HDD;F HDD;C HED;F HEE;C"),
    ('1/sqrt2', (('-1', '-1'), ('1', '-1')),
     "DEF;F DEC;H EDF;F EDH;C"),
    ('1/sqrt2', (('-1', '1'), ('1', '1')),
     "DEF;C DEH;C EDC;F EDC;H EEF;C EEC;F FED;C FEE;C CDE;F CDE;H CEE;F HED;C"),
    ('1/sqrt2', (('-1', '-1'), ('-1', '1')),
     "DEH;G EDC;G CDE;G HED;G"),
    ('1/2', (('-1', '-sqrt3'), ('-sqrt3', '1')),
     "DFD;G DFD;C DFD;H DCD;F DCD;H DHD;F DHD;C"),
    ('1', (('1', '0'), ('0', '-1')),
     "DFD;F DCD;C DHD;G"),
    ('1/2', (('-sqrt3', '1'), ('-1', '-sqrt3')),
     "DFE;G DFE;C DFE;H ECD;F EHD;F"),
    ('1', (('0', '1'), ('1', '0')),
     "DFE;F EFD;F"),
    ('1/2', (('-1', 'sqrt3'), ('sqrt3', '1')),
     "DCD;G DHD;H"),
    ('1/2', (('sqrt3', '1'), ('1', '-sqrt3')),
     "DCE;G DHE;H ECD;G EHD;H"),
    ('1/2', (('-sqrt3', '-1'), ('1', '-sqrt3')),
     "DCE;F DHE;F EFD;G EFD;C EFD;H"),
    ('1', (('0', '-1'), ('-1', '0')),
     "DCE;C DHE;G ECD;C EHD;G"),
    ('1/2', (('-sqrt3', '1'), ('1', 'sqrt3')),
     "DCE;H DHE;C ECD;H EHD;C"),
    ('1/2', (('1', '-sqrt3'), ('-sqrt3', '-1')),
     "EFE;G EFE;C EFE;H ECE;G ECE;F EHE;F EHE;H"),
    ('1', (('-1', '0'), ('0', '1')),
     "EFE;F ECE;C EHE;G"),
    ('1/2', (('1', 'sqrt3'), ('sqrt3', '-1')),
     "ECE;H EHE;C"),
    ('1/sqrt2', (('-1', '1'), ('-1', '-1')),
     "FDE;F FED;F CED;H HDE;C"),
    ('1/sqrt2', (('1', '1'), ('1', '-1')),
     "DFF;D DFC;D DFC;E DCF;D DCC;D DHH;D ECF;D ECC;E EHH;E FFD;D FCD;D FCE;D "
     "CFD;D CFD;E CCD;D CCE;E HHD;D HHE;E"),
    ('1/sqrt2', (('-1', '1'), ('-1', '-1')),
     "DFF;E DHC;E EFF;D ECH;D"),
    ('1/sqrt2', (('1', '-1'), ('1', '1')),
     "DFH;D DFH;E DCH;D DHF;D DHC;D ECH;E EHF;D EHC;E FFE;E FHD;E FHE;E CCD;E "
     "CCE;D HFE;D HFE;E HHD;E HHE;D"),
    ('1/sqrt2', (('-1', '1'), ('1', '1')),
     "DCF;E DCH;E EFC;D EFC;E ECF;E EHC;D FCD;E FCE;E CFE;D CFE;E CHE;D HCD;E"),
    ('1/sqrt2', (('1', '1'), ('-1', '1')),
     "DCC;E DHF;E DHH;E EFF;E EFH;D EFH;E ECC;D EHF;E EHH;D FHD;D FHE;D CHD;D "
     "CHE;E HFD;D HFD;E HCD;D HCE;E"),
    ('1', (('1', '0'), ('0', '-1')),
     "FDF;D CDC;D"),
    ('1', (('0', '1'), ('1', '0')),
     "FDF;E FEF;D"),
    ('1/2', (('-1', '-sqrt3'), ('-sqrt3', '1')),
     "FDC;D FDH;D CDF;D CDH;D HDF;D HDC;D"),
    ('1/2', (('-sqrt3', '1'), ('-1', '-sqrt3')),
     "FDC;E FDH;E CEF;D HEF;D"),
    ('1', (('-1', '0'), ('0', '1')),
     "FEF;E CEC;E"),
    ('1/2', (('-sqrt3', '-1'), ('1', '-sqrt3')),
     "FEC;D FEH;D CDF;E HDF;E"),
    ('1/2', (('1', '-sqrt3'), ('-sqrt3', '-1')),
     "FEC;E FEH;E CEF;E HEF;E HEH;E"),
    ('1/sqrt2', (('-1', '-1'), ('1', '-1')),
     "FFD;E FFE;D CHD;E HCE;D"),
    ('1', (('0', '-1'), ('-1', '0')),
     "CDC;E CEC;D"),
    ('1/2', (('-sqrt3', '1'), ('1', 'sqrt3')),
     "CDH;E CEH;D HDC;E HEC;D"),
    ('1/2', (('1', 'sqrt3'), ('sqrt3', '-1')),
     "CEH;E HEC;E"),
    ('1/2', (('-1', 'sqrt3'), ('sqrt3', '1')),
     "HDH;D"),
    ('1/2', (('sqrt3', '1'), ('1', '-sqrt3')),
     "HDH;E HEH;D"),
    ('1/2', (('1', '1', 'sqrt2'), ('1', '1', '-sqrt2'), ('sqrt2', '-sqrt2', '0')),
     "FFF;F CCC;C HHH;H"),
    ('1/sqrt2', (('1', '-1'), ('1', '1')),
     "FFC;C CCF;F CCH;H HHC;C"),
    ('1/sqrt2', (('1', '1'), ('1', '-1')),
     "FFH;H FHH;F HFF;H HHF;F"),
    ('1', (('0', '1'), ('1', '0')),
     "FCF;C FHF;H CFC;F CHC;H HFH;F HCH;C"),
    ('1/sqrt2', (('1', '1'), ('-1', '1')),
     "FCC;F CFF;C CHH;C HCC;H"),
)

# value -> keys; "w" is omega = exp(2 pi i / 3)
R_VALUES = {
    '1': (
        "AAA ABB BAB AGG GAG BBA GHF GHC DFD DCD EFE ECE "
        "FDD FEE FFA FFF CDD CEE CCA CCC HGF HGC EEA EEF "
        "EEC"
    ),
    '-1': (
        "BGG BFF BCC BHH GBG FBF FFB CBC CCB HBH DDA DDF "
        "DDC"
    ),
    'i': "BDE DBE EFD ECD FED CED DEB EDB",
    '-i': "BED DFE DCE EBD FDE CDE DEF DEC EDF EDC",
    'w^2': (
        "GGA GFH GCH DHD EHE FGH FCG FHC CGH CFG CHF HDD "
        "HEE HFC HCF HHH EEG"
    ),
    '-w^2': "GGB DDG",
    'w': (
        "GGG GDD GEE GFC GCF DGD EGE FGC FCH FHG CGF CFH "
        "CHG HFG HCG HHA EEH"
    ),
    '-w': "DDH HHB",
    'wi': "GED EGD",
    '-wi': "GDE DGE DEH EDH",
    'w^2i': "EHD HED",
    '-w^2i': "DEG EDG DHE HDE",
}
