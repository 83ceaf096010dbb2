#include "jetcov/linalg.hpp"

#include "jetcov/error.hpp"

namespace jetcov {

namespace {

Matrix minor_of(const Matrix &m, std::size_t row, std::size_t col)
{
	Matrix out;
	for (std::size_t i = 0; i < m.size(); ++i)
	{
		if (i == row)
			continue;
		std::vector<RationalExpr> r;
		for (std::size_t j = 0; j < m.size(); ++j)
			if (j != col)
				r.push_back(m[i][j]);
		out.push_back(std::move(r));
	}
	return out;
}

} // namespace

RationalExpr determinant(const Matrix &m)
{
	std::size_t n = m.size();
	if (n == 0)
		return RationalExpr(1);
	if (n == 1)
		return m[0][0];
	if (n == 2)
		return m[0][0] * m[1][1] - m[0][1] * m[1][0];
	RationalExpr d;
	for (std::size_t j = 0; j < n; ++j)
	{
		if (m[0][j].is_zero())
			continue;
		RationalExpr t = m[0][j] * determinant(minor_of(m, 0, j));
		if (j % 2)
			d -= t;
		else
			d += t;
	}
	return d;
}

Matrix inverse(const Matrix &m)
{
	std::size_t n = m.size();
	RationalExpr det = determinant(m);
	if (det.is_zero())
		throw DivisionByZero("matrix inverse");
	RationalExpr inv_det = RationalExpr(1) / det;
	Matrix out(n, std::vector<RationalExpr>(n));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
		{
			RationalExpr c = determinant(minor_of(m, j, i));
			out[i][j] = ((i + j) % 2 ? -c : c) * inv_det;
		}
	return out;
}

Matrix multiply(const Matrix &a, const Matrix &b)
{
	std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
	Matrix out(r, std::vector<RationalExpr>(c));
	for (std::size_t i = 0; i < r; ++i)
		for (std::size_t j = 0; j < c; ++j)
			for (std::size_t l = 0; l < k; ++l)
				if (!a[i][l].is_zero() && !b[l][j].is_zero())
					out[i][j] += a[i][l] * b[l][j];
	return out;
}

Matrix transpose(const Matrix &m)
{
	if (m.empty())
		return {};
	Matrix out(m[0].size(), std::vector<RationalExpr>(m.size()));
	for (std::size_t i = 0; i < m.size(); ++i)
		for (std::size_t j = 0; j < m[i].size(); ++j)
			out[j][i] = m[i][j];
	return out;
}

std::vector<std::vector<RationalExpr>> nullspace(Matrix m)
{
	std::size_t rows = m.size();
	std::size_t cols = rows ? m[0].size() : 0;
	std::vector<std::size_t> pivot_cols;
	RationalExpr prev(1);
	std::size_t r = 0;
	for (std::size_t col = 0; col < cols && r < rows; ++col)
	{
		std::size_t p = r;
		while (p < rows && m[p][col].is_zero())
			++p;
		if (p == rows)
			continue;
		std::swap(m[p], m[r]);
		for (std::size_t i = r + 1; i < rows; ++i)
		{
			for (std::size_t j = col + 1; j < cols; ++j)
			{
				RationalExpr e = m[r][col] * m[i][j] - m[i][col] * m[r][j];
				m[i][j] = e / prev;
			}
			m[i][col] = RationalExpr();
		}
		// entries left of col in row r are already zero
		prev = m[r][col];
		pivot_cols.push_back(col);
		++r;
	}

	std::vector<bool> is_pivot(cols, false);
	for (auto c : pivot_cols)
		is_pivot[c] = true;
	std::vector<std::vector<RationalExpr>> basis;
	for (std::size_t f = 0; f < cols; ++f)
	{
		if (is_pivot[f])
			continue;
		std::vector<RationalExpr> x(cols);
		x[f] = RationalExpr(1);
		for (std::size_t k = pivot_cols.size(); k-- > 0;)
		{
			std::size_t pc = pivot_cols[k];
			RationalExpr s;
			for (std::size_t j = pc + 1; j < cols; ++j)
				if (!x[j].is_zero() && !m[k][j].is_zero())
					s += m[k][j] * x[j];
			x[pc] = -s / m[k][pc];
		}
		basis.push_back(std::move(x));
	}
	return basis;
}

} // namespace jetcov
