import os

from twochar.scalars import Cyclotomic, root_of_unity

here = os.path.abspath(os.path.dirname(__file__))
sample_g1_input = os.path.join(here, 'sample-inputs/g1-input.json')

builtin_names = ['G1', 'G2', 'BA(Z2)', 'BA(Z3)', 'grp(Z2)', 'grp(Z3)', 'grp(S3)']

omega = root_of_unity(3, 1)
zero = Cyclotomic.zero()
one = Cyclotomic.one()

# dim⟨χ_a, χ_b⟩ over the catalogue irreducibles, in catalogue order
g1_inner = [[2, 1, 0], [1, 2, 0], [0, 0, 1]]
g2_inner = [[2, 1, 0], [1, 2, 0], [0, 0, 2]]

# Σ over double cosets HgK of the number of conjugacy classes of H ∩ gKg⁻¹,
# rows and columns ordered 𝟙, 𝟙_c, k[G/Z2], k[G/Z3]
grp_s3_inner = [[3, 1, 2, 3], [1, 6, 3, 2], [2, 3, 3, 1], [3, 2, 1, 6]]

g1_fusion = {
    ('𝟙', '𝟙'): (1, 0, 0),
    ('𝟙', '𝟙_c'): (0, 1, 0),
    ('𝟙', 'S'): (0, 0, 1),
    ('𝟙_c', '𝟙_c'): (0, 2, 0),
    ('𝟙_c', 'S'): (0, 0, 2),
    ('S', 'S'): (0, 1, 1),
}


def matrix(df):
    return [[int(v) for v in row] for row in df.to_numpy().tolist()]
